#include "evsnn/network.hpp"

#include <limits>
#include <unordered_set>

#include <json.hpp>

namespace evsnn {

using nlohmann::json;

const NeuronSpec* Network::find(NeuronId id) const
{
    for (const auto& n : neurons) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

std::optional<NeuronId> Network::find_label(std::string_view label) const
{
    for (const auto& n : neurons) {
        if (n.label && *n.label == label) return n.id;
    }
    return std::nullopt;
}

NeuronId Network::id_of(std::string_view label) const
{
    if (auto id = find_label(label)) return *id;
    throw std::out_of_range("no neuron labelled '" + std::string(label) + "'");
}

std::string Network::display_name(NeuronId id) const
{
    const NeuronSpec* n = find(id);
    if (n && n->label) return *n->label;
    return "#" + std::to_string(id);
}

std::vector<Violation> validate_network(const Network& net)
{
    std::vector<Violation> out;
    std::unordered_set<NeuronId> ids;
    for (const auto& n : net.neurons) {
        if (!ids.insert(n.id).second) {
            out.push_back({Violation::Kind::DuplicateId, "duplicate neuron id " + std::to_string(n.id)});
        }
    }
    for (std::size_t i = 0; i < net.synapses.size(); ++i) {
        const auto& s = net.synapses[i];
        const std::string where = "synapse " + std::to_string(i);
        if (!ids.contains(s.pre)) {
            out.push_back({Violation::Kind::DanglingEndpoint, where + ": pre " + std::to_string(s.pre) + " does not exist"});
        }
        if (!ids.contains(s.post)) {
            out.push_back({Violation::Kind::DanglingEndpoint, where + ": post " + std::to_string(s.post) + " does not exist"});
        }
        if (s.delay < 0) {
            out.push_back({Violation::Kind::NegativeDelay, where + ": delay " + std::to_string(s.delay)});
        }
    }
    for (NeuronId id : net.inputs) {
        if (!ids.contains(id)) out.push_back({Violation::Kind::UnknownInput, "input " + std::to_string(id) + " does not exist"});
    }
    for (NeuronId id : net.outputs) {
        if (!ids.contains(id)) out.push_back({Violation::Kind::UnknownOutput, "output " + std::to_string(id) + " does not exist"});
    }
    return out;
}

namespace {

const json& member(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "/" + key, "missing field");
    return *it;
}

std::int64_t as_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer()) throw ParseError(path, "expected integer");
    return v.get<std::int64_t>();
}

NeuronId as_id(const json& v, const std::string& path)
{
    std::int64_t raw = as_int(v, path);
    if (raw < 0 || raw > std::numeric_limits<NeuronId>::max()) throw ParseError(path, "neuron id out of range");
    return static_cast<NeuronId>(raw);
}

const json& as_array(const json& v, const std::string& path)
{
    if (!v.is_array()) throw ParseError(path, "expected array");
    return v;
}

std::vector<NeuronId> id_list(const json& obj, const char* key)
{
    const std::string path = std::string("/") + key;
    std::vector<NeuronId> ids;
    const json& arr = as_array(member(obj, key, ""), path);
    for (std::size_t i = 0; i < arr.size(); ++i) ids.push_back(as_id(arr[i], path + "/" + std::to_string(i)));
    return ids;
}

}  // namespace

Network load_network(std::string_view document)
{
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ParseError("byte " + std::to_string(e.byte), e.what());
    }
    if (!doc.is_object()) throw ParseError("/", "expected object");

    Network net;
    const json& neurons = as_array(member(doc, "neurons", ""), "/neurons");
    for (std::size_t i = 0; i < neurons.size(); ++i) {
        const std::string path = "/neurons/" + std::to_string(i);
        const json& n = neurons[i];
        if (!n.is_object()) throw ParseError(path, "expected object");
        NeuronSpec spec;
        spec.id = as_id(member(n, "id", path), path + "/id");
        spec.threshold = as_int(member(n, "threshold", path), path + "/threshold");
        const json& leak = member(n, "leak", path);
        if (!leak.is_boolean()) throw ParseError(path + "/leak", "expected boolean");
        spec.leak = leak.get<bool>();
        if (auto it = n.find("label"); it != n.end()) {
            if (!it->is_string()) throw ParseError(path + "/label", "expected string");
            spec.label = it->get<std::string>();
        }
        net.neurons.push_back(std::move(spec));
    }

    const json& synapses = as_array(member(doc, "synapses", ""), "/synapses");
    for (std::size_t i = 0; i < synapses.size(); ++i) {
        const std::string path = "/synapses/" + std::to_string(i);
        const json& s = synapses[i];
        if (!s.is_object()) throw ParseError(path, "expected object");
        net.synapses.push_back({
            as_id(member(s, "pre", path), path + "/pre"),
            as_id(member(s, "post", path), path + "/post"),
            as_int(member(s, "weight", path), path + "/weight"),
            as_int(member(s, "delay", path), path + "/delay"),
        });
    }

    net.inputs = id_list(doc, "inputs");
    net.outputs = id_list(doc, "outputs");

    if (auto it = doc.find("meta"); it != doc.end()) {
        if (!it->is_object()) throw ParseError("/meta", "expected object");
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string()) throw ParseError("/meta/" + key, "expected string");
            net.meta[key] = value.get<std::string>();
        }
    }
    return net;
}

std::string save_network(const Network& net)
{
    json doc;
    doc["neurons"] = json::array();
    for (const auto& n : net.neurons) {
        json j{{"id", n.id}, {"threshold", n.threshold}, {"leak", n.leak}};
        if (n.label) j["label"] = *n.label;
        doc["neurons"].push_back(std::move(j));
    }
    doc["synapses"] = json::array();
    for (const auto& s : net.synapses) {
        doc["synapses"].push_back({{"pre", s.pre}, {"post", s.post}, {"weight", s.weight}, {"delay", s.delay}});
    }
    doc["inputs"] = net.inputs;
    doc["outputs"] = net.outputs;
    doc["meta"] = json::object();
    for (const auto& [k, v] : net.meta) doc["meta"][k] = v;
    return doc.dump(2) + "\n";
}

}  // namespace evsnn
