#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "beliefkit/filter.hpp"
#include "beliefkit/instances.hpp"
#include "beliefkit/measure.hpp"

namespace beliefkit {

/// Raised on any structural or numeric defect in a spec document; the message
/// names the offending section and, for weight rows, the conditioning input.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A named belief sequence declared in a spec: the straight line from `from`
/// to `to` sampled at 1/n, converging to `to`.
struct BeliefLineSpec {
    Measure to;
    Measure from;
    std::size_t length = kDefaultSequenceLength;
};

struct ModelSpec {
    std::string name;
    MdpiiModel model;
    Measure prior;  // belief "z0"; defaults to uniform on W
    std::map<std::string, BeliefLineSpec> sequences;
    std::vector<std::string> family_names;  // built-in member names, in order
};

/// Built-in family members on a finite space: "constant-one", "indicator"
/// (one member per singleton), "clipped-abs" and "atan" (coordinate-based,
/// Euclidean spaces only). The constant-one member is always placed first.
FunctionFamily build_family(const SpacePtr& space, const std::vector<std::string>& names);

ModelSpec load_model_spec(const nlohmann::json& doc);
ModelSpec load_model_spec_file(const std::string& path);
nlohmann::json export_model_spec(const ModelSpec& spec);

/// Ready-made spec shipped with the tool. Currently: "twostate-demo", the
/// two-state composed model with identity transition and a 0.9 / 0.2
/// observation channel.
ModelSpec builtin_model_spec(const std::string& name);
bool is_builtin_model_spec(const std::string& name);

// Mixture-form instance documents (kind "mixture"), the export format of the
// generated ground-truth instances.
nlohmann::json export_instance(const GeneratedInstance& inst);
GeneratedInstance load_instance(const nlohmann::json& doc);

}  // namespace beliefkit
