// Batch front-end: load model documents, run the belief filter, and emit
// continuity diagnostics as JSON or CSV reports.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "beliefkit/continuity.hpp"
#include "beliefkit/filter.hpp"
#include "beliefkit/instances.hpp"
#include "beliefkit/model_spec.hpp"

namespace bk = beliefkit;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitBadSpec = 2;
constexpr int kExitInconclusive = 3;

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

json report_to_json(const bk::GapReport& r) {
    json out{{"condition", bk::to_string(r.condition)},
             {"witness", r.witness},
             {"verdict", bk::to_string(r.verdict)},
             {"eps", r.eps},
             {"fail_floor", r.fail_floor},
             {"tail_start", r.tail_start},
             {"gaps", r.gaps}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

std::string report_to_csv(const bk::GapReport& r) {
    std::ostringstream os;
    os << "n,gap\n";
    for (std::size_t i = 0; i < r.gaps.size(); ++i)
        os << (i + 1) << "," << bk::format_weight(r.gaps[i]) << "\n";
    return os.str();
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    out << body;
}

void emit_reports(const std::vector<bk::GapReport>& reports, const std::string& out_dir,
                  const std::string& format) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const bk::GapReport& r = reports[i];
        std::cout << bk::to_string(r.condition) << " [" << r.witness
                  << "]: " << bk::to_string(r.verdict) << " (terminal gap "
                  << (r.gaps.empty() ? 0.0 : r.gaps.back()) << ")\n";
        if (out_dir.empty()) continue;
        const std::string stem =
            "report_" + std::to_string(i) + "_" + bk::to_string(r.condition);
        if (format == "json") {
            write_file(out_dir, stem + ".json", report_to_json(r).dump(2) + "\n");
        } else {
            write_file(out_dir, stem + ".csv", report_to_csv(r));
        }
    }
}

bk::ModelSpec load_spec_arg(const std::string& spec) {
    if (bk::is_builtin_model_spec(spec)) return bk::builtin_model_spec(spec);
    return bk::load_model_spec_file(spec);
}

// Diagnostics on a model: the conditioning sequence is a declared belief line
// at the first (y, a) pair, turned into a joint-kernel sequence through R.
std::vector<bk::GapReport> diagnose_model(const bk::ModelSpec& spec,
                                          const std::string& sequence_name,
                                          const std::vector<bk::ConditionId>& conditions,
                                          const bk::GapOptions& opt) {
    auto it = spec.sequences.find(sequence_name);
    if (it == spec.sequences.end())
        throw bk::SpecError("spec declares no sequence named '" + sequence_name + "'");
    const bk::BeliefLineSpec& line = it->second;
    const std::vector<bk::Measure> z_terms = bk::belief_line(line.to, line.from, line.length);

    auto eval = [&](std::size_t n) {
        const bk::Measure& z = n < z_terms.size() ? z_terms[n] : line.to;
        return bk::r_kernel(spec.model, z, 0, 0);
    };
    bk::JointKernel<std::size_t> kernel{spec.model.w_space(), spec.model.y_space(),
                                        [eval](const std::size_t& n) { return eval(n); }};
    std::vector<std::size_t> idx(z_terms.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const bk::ParamSequence<std::size_t> seq{idx, z_terms.size()};
    const bk::FunctionFamily fam =
        bk::build_family(spec.model.w_space(), spec.family_names);

    std::vector<bk::GapReport> reports;
    for (bk::ConditionId cond : conditions) {
        switch (cond) {
            case bk::ConditionId::SufA: {
                bk::GapReport r = bk::check_assumption_m(kernel, seq, fam, opt);
                r.condition = bk::ConditionId::SufA;
                reports.push_back(std::move(r));
                break;
            }
            case bk::ConditionId::WtvB:
            case bk::ConditionId::ClosedC:
            case bk::ConditionId::ContSetD: {
                std::vector<bk::Verdict> vs;
                std::vector<double> gaps;
                const std::size_t n1 = spec.model.w_space()->size();
                for (unsigned long bits = 0; bits < (1ul << n1); ++bits) {
                    bk::GapReport r = bk::condition_gap(
                        kernel, seq, cond, bk::subset_witness(spec.model.w_space(), bits),
                        opt);
                    vs.push_back(r.verdict);
                    if (gaps.empty()) gaps.assign(r.gaps.size(), 0.0);
                    for (std::size_t i = 0; i < gaps.size(); ++i)
                        gaps[i] = std::max(gaps[i], r.gaps[i]);
                }
                bk::GapReport agg = bk::make_report(cond, "all subsets", std::move(gaps), opt);
                agg.verdict = bk::all_of_verdicts(vs);
                reports.push_back(std::move(agg));
                break;
            }
            case bk::ConditionId::LscE: {
                bk::GapReport r = bk::condition_gap(
                    kernel, seq, bk::ConditionId::LscE,
                    bk::function_witness(fam.member(fam.size() > 1 ? 1 : 0)), opt);
                reports.push_back(std::move(r));
                break;
            }
            case bk::ConditionId::MarginalTv:
                reports.push_back(bk::condition_gap(kernel, seq, cond,
                                                    bk::Witness{"marginal", {}, {}}, opt));
                break;
            case bk::ConditionId::AssumptionKern:
                reports.push_back(bk::check_assumption_kern(kernel, seq, opt));
                break;
            case bk::ConditionId::AssumptionH:
                reports.push_back(bk::check_assumption_h(kernel, seq, fam, opt));
                break;
            case bk::ConditionId::AssumptionM:
                reports.push_back(bk::check_assumption_m(kernel, seq, fam, opt));
                break;
        }
    }
    return reports;
}

// Diagnostics for the closed-form real-line models.
std::vector<bk::GapReport> diagnose_real(const std::string& name,
                                         const std::vector<bk::ConditionId>& conditions,
                                         const bk::GapOptions& opt) {
    const bk::RealKernel p = name == "example1" ? bk::example1().p : bk::remark_model().p;
    const bk::RealSeq seq = bk::harmonic_seq();
    const bk::IntervalUnion witness{{{0.25, 1.5}}};

    std::vector<bk::GapReport> reports;
    for (bk::ConditionId cond : conditions) {
        switch (cond) {
            case bk::ConditionId::SufA:
            case bk::ConditionId::AssumptionM:
                reports.push_back(bk::suf_gap_real_family(p, seq, opt));
                reports.back().condition = cond;
                break;
            case bk::ConditionId::WtvB:
            case bk::ConditionId::ClosedC:
            case bk::ConditionId::ContSetD:
            case bk::ConditionId::MarginalTv:
                reports.push_back(bk::set_gap_real(p, seq, cond, witness, opt));
                break;
            default:
                throw bk::SpecError("condition " + bk::to_string(cond) +
                                    " is not available for closed-form models");
        }
    }
    if (name == "remark") {
        // belief-MDP side of the remark model: weakly continuous
        const bk::SpacePtr w = bk::make_space(
            "W", {bk::Point{"0", {0.0}}, bk::Point{"1", {1.0}}}, bk::Metric::Euclidean);
        std::vector<double> gaps = bk::remark_qhat_weak_gaps(
            bk::Measure(w, {0.5, 0.5}), bk::Measure(w, {0.9, 0.1}));
        reports.push_back(
            bk::make_report(bk::ConditionId::SufA, "belief transition weak continuity",
                            std::move(gaps), opt));
    }
    return reports;
}

int cmd_filter(const std::string& spec_path, const std::string& actions_arg,
               const std::string& observations_arg, const std::string& out_dir,
               const std::string& format) {
    const bk::ModelSpec spec = load_spec_arg(spec_path);
    const bk::MdpiiModel& model = spec.model;
    std::vector<std::size_t> actions, observations;
    for (const std::string& id : split_commas(actions_arg))
        actions.push_back(model.a_space()->index(id));
    for (const std::string& id : split_commas(observations_arg))
        observations.push_back(model.y_space()->index(id));

    const bk::BeliefTrajectory traj =
        bk::run_filter(model, spec.prior, 0, actions, observations);

    std::ostringstream table;
    table << "step,action,observation";
    for (std::size_t i = 0; i < model.w_space()->size(); ++i)
        table << "," << model.w_space()->point(i).id;
    table << ",flags\n";
    table << "0,,";
    for (std::size_t i = 0; i < traj.start.z.size(); ++i)
        table << "," << bk::format_weight(traj.start.z[i]);
    table << ",\n";
    for (std::size_t k = 0; k < traj.steps.size(); ++k) {
        const auto& s = traj.steps[k];
        table << (k + 1) << "," << model.a_space()->point(s.action).id << ","
              << model.y_space()->point(s.observation).id;
        for (std::size_t i = 0; i < s.posterior.size(); ++i)
            table << "," << bk::format_weight(s.posterior[i]);
        table << "," << (s.zero_evidence ? "ZERO_EVIDENCE" : "") << "\n";
        if (s.zero_evidence)
            std::cerr << "warning: step " << (k + 1)
                      << " observed a zero-evidence outcome; belief reset to uniform\n";
    }
    std::cout << table.str();
    if (!out_dir.empty()) {
        if (format == "json") {
            json steps = json::array();
            for (std::size_t k = 0; k < traj.steps.size(); ++k) {
                const auto& s = traj.steps[k];
                json weights = json::object();
                for (std::size_t i = 0; i < s.posterior.size(); ++i)
                    weights[model.w_space()->point(i).id] = s.posterior[i];
                steps.push_back(json{{"step", k + 1},
                                     {"action", model.a_space()->point(s.action).id},
                                     {"observation", model.y_space()->point(s.observation).id},
                                     {"belief", weights},
                                     {"zero_evidence", s.zero_evidence}});
            }
            write_file(out_dir, "trajectory.json", json{{"steps", steps}}.dump(2) + "\n");
        } else {
            write_file(out_dir, "trajectory.csv", table.str());
        }
    }
    return kExitOk;
}

int cmd_diagnose(const std::string& spec_path, const std::string& sequence_name,
                 const std::vector<std::string>& condition_names, double eps,
                 const std::string& out_dir, const std::string& format) {
    std::vector<bk::ConditionId> conditions;
    for (const std::string& n : condition_names)
        conditions.push_back(bk::condition_from_string(n));
    bk::GapOptions opt;
    opt.eps = eps;

    std::vector<bk::GapReport> reports;
    if (spec_path == "example1" || spec_path == "remark") {
        reports = diagnose_real(spec_path, conditions, opt);
    } else {
        reports = diagnose_model(load_spec_arg(spec_path), sequence_name, conditions, opt);
    }

    emit_reports(reports, out_dir, format);
    std::vector<bk::Verdict> vs;
    for (const auto& r : reports) vs.push_back(r.verdict);
    const bool agree =
        !vs.empty() && std::all_of(vs.begin(), vs.end(), [&](auto v) { return v == vs[0]; });
    std::cout << "agreement: " << (agree ? "yes" : "no") << "\n";
    for (const auto& r : reports)
        if (r.verdict == bk::Verdict::Inconclusive) return kExitInconclusive;
    return kExitOk;
}

int cmd_equivalence(std::size_t seeds, const std::string& sizes_arg, double eps) {
    std::size_t n1 = 2, n2 = 2;
    {
        const auto x = sizes_arg.find('x');
        if (x == std::string::npos)
            throw bk::SpecError("--sizes must look like 2x2");
        n1 = std::stoul(sizes_arg.substr(0, x));
        n2 = std::stoul(sizes_arg.substr(x + 1));
    }
    if (n2 > 10) throw bk::SpecError("|S2| over the enumeration budget of 10");
    if (n1 > 16) throw bk::SpecError("|S1| over the subset budget of 16");

    bk::GapOptions opt;
    opt.eps = eps;
    std::size_t agree = 0, total = 0;
    for (bk::GroundTruth truth :
         {bk::GroundTruth::Continuous, bk::GroundTruth::DiscontinuousAtLimit}) {
        const bk::Verdict expected =
            truth == bk::GroundTruth::Continuous ? bk::Verdict::Pass : bk::Verdict::Fail;
        for (std::size_t seed = 1; seed <= seeds; ++seed) {
            const bk::GeneratedInstance inst = bk::generate_instance(seed, truth, n1, n2);
            const bk::SuiteReport suite = bk::equivalence_suite(
                inst.kernel(), bk::instance_sequence(),
                bk::FunctionFamily::discrete_default(inst.s1), opt);
            const bool ok = suite.agreement && suite.consensus == expected;
            agree += ok;
            ++total;
            std::cout << "seed " << seed << " "
                      << (truth == bk::GroundTruth::Continuous ? "continuous"
                                                               : "discontinuous")
                      << ":";
            for (const auto& r : suite.reports)
                std::cout << " " << bk::to_string(r.condition) << "="
                          << bk::to_string(r.verdict);
            std::cout << (ok ? " [ok]" : " [MISMATCH]") << "\n";
        }
    }
    const double pct = total == 0 ? 100.0 : 100.0 * double(agree) / double(total);
    std::cout << "agreement: " << pct << "% (" << agree << "/" << total << ")\n";
    return pct == 100.0 ? kExitOk : kExitDisagree;
}

int cmd_export(const std::string& spec_path, const std::string& out_dir) {
    const bk::ModelSpec spec = load_spec_arg(spec_path);
    const std::string body = bk::export_model_spec(spec).dump(2) + "\n";
    if (out_dir.empty()) {
        std::cout << body;
    } else {
        const std::string name = spec.name.empty() ? "model" : spec.name;
        write_file(out_dir, name + ".json", body);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"belief-MDP filter and kernel-continuity diagnostics"};
    app.require_subcommand(1);

    std::string spec_path, sequence_name = "mix", out_dir, format = "csv";
    std::string actions_arg, observations_arg, sizes_arg = "2x2";
    std::vector<std::string> condition_names = {"SUF_A"};
    double eps = 1e-6;
    std::size_t seeds = 20;

    auto* filter = app.add_subcommand("filter", "run the belief filter on a model");
    filter->add_option("--spec", spec_path, "model document path or built-in name")
        ->required();
    filter->add_option("--actions", actions_arg, "comma-separated action ids");
    filter->add_option("--observations", observations_arg, "comma-separated observation ids");
    filter->add_option("--out-dir", out_dir, "directory for trajectory files");
    filter->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* diagnose = app.add_subcommand("diagnose", "continuity diagnostics along a sequence");
    diagnose->add_option("--spec", spec_path, "model document or built-in name")->required();
    diagnose->add_option("--sequence", sequence_name, "declared sequence name");
    diagnose->add_option("--conditions", condition_names, "condition ids")->delimiter(',');
    diagnose->add_option("--eps", eps, "pass tolerance");
    diagnose->add_option("--out-dir", out_dir, "directory for report files");
    diagnose->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* equivalence =
        app.add_subcommand("equivalence", "equivalence suite over generated instances");
    equivalence->add_option("--seeds", seeds, "seeds per ground-truth class");
    equivalence->add_option("--sizes", sizes_arg, "instance sizes, e.g. 2x2");
    equivalence->add_option("--eps", eps, "pass tolerance");

    auto* exp = app.add_subcommand("export", "write a model document back out");
    exp->add_option("--spec", spec_path, "model document or built-in name")->required();
    exp->add_option("--out-dir", out_dir, "output directory (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (filter->parsed())
            return cmd_filter(spec_path, actions_arg, observations_arg, out_dir, format);
        if (diagnose->parsed())
            return cmd_diagnose(spec_path, sequence_name, condition_names, eps, out_dir,
                                format);
        if (equivalence->parsed()) return cmd_equivalence(seeds, sizes_arg, eps);
        if (exp->parsed()) return cmd_export(spec_path, out_dir);
    } catch (const bk::SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadSpec;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadSpec;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadSpec;
    }
    return kExitOk;
}
