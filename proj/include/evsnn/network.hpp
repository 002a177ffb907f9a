#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evsnn {

using NeuronId = std::uint32_t;

struct NeuronSpec {
    NeuronId id = 0;
    std::int64_t threshold = 0;
    bool leak = false;  // total leak: residual potential is zeroed at the end of every cycle
    std::optional<std::string> label;

    friend bool operator==(const NeuronSpec&, const NeuronSpec&) = default;
};

struct SynapseSpec {
    NeuronId pre = 0;
    NeuronId post = 0;
    std::int64_t weight = 0;
    std::int64_t delay = 0;  // cycles; negative values are reported by validate_network

    friend bool operator==(const SynapseSpec&, const SynapseSpec&) = default;
};

/// Directed graph of integer-threshold neurons and integer-weight, integer-delay
/// synapses. Immutable once built; share it read-only between engines.
struct Network {
    std::vector<NeuronSpec> neurons;
    std::vector<SynapseSpec> synapses;
    std::vector<NeuronId> inputs;
    std::vector<NeuronId> outputs;
    std::map<std::string, std::string> meta;

    const NeuronSpec* find(NeuronId id) const;
    std::optional<NeuronId> find_label(std::string_view label) const;
    /// Like find_label but throws std::out_of_range when the label is unknown.
    NeuronId id_of(std::string_view label) const;
    std::string display_name(NeuronId id) const;

    friend bool operator==(const Network&, const Network&) = default;
};

struct Violation {
    enum class Kind { DuplicateId, DanglingEndpoint, NegativeDelay, UnknownInput, UnknownOutput };
    Kind kind;
    std::string detail;
};

std::vector<Violation> validate_network(const Network& net);

/// Raised when a document does not follow the network schema. `where` is a
/// JSON pointer (or byte offset for syntax errors).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where))
    {
    }
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

Network load_network(std::string_view document);
std::string save_network(const Network& net);

}  // namespace evsnn
