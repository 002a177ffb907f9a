#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "evsnn/network.hpp"

namespace evsnn {

using Cycle = std::uint32_t;

struct Spike {
    Cycle cycle = 0;
    NeuronId neuron = 0;

    friend bool operator==(const Spike&, const Spike&) = default;
};

/// External input spikes. Every entry carries +1 charge.
struct SpikeSchedule {
    std::vector<Spike> entries;

    void add(Cycle cycle, NeuronId neuron) { entries.push_back({cycle, neuron}); }
    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    std::vector<NeuronId> at(Cycle cycle) const;
};

struct Fire {
    Cycle cycle = 0;
    NeuronId neuron = 0;

    friend bool operator==(const Fire&, const Fire&) = default;
};

/// Fire cycles of every neuron, kept as one list sorted by (cycle, neuron).
class FireRecord {
public:
    FireRecord() = default;
    explicit FireRecord(std::vector<Fire> fires);

    const std::vector<Fire>& fires() const { return fires_; }
    std::vector<Cycle> cycles(NeuronId id) const;
    std::size_t count(NeuronId id) const;
    bool fired(NeuronId id) const { return first(id).has_value(); }
    std::optional<Cycle> first(NeuronId id) const;
    bool fired_at(NeuronId id, Cycle cycle) const;
    std::map<NeuronId, std::vector<Cycle>> by_neuron() const;
    std::size_t size() const { return fires_.size(); }

    friend bool operator==(const FireRecord&, const FireRecord&) = default;

private:
    std::vector<Fire> fires_;
};

/// Dense, index-addressed form of a validated Network. Built once and shared
/// read-only by any number of engines.
class CompiledNetwork {
public:
    explicit CompiledNetwork(const Network& net);

    std::size_t size() const { return ids_.size(); }
    std::optional<std::uint32_t> index_of(NeuronId id) const;
    NeuronId id_at(std::uint32_t index) const { return ids_[index]; }

private:
    friend class Engine;

    std::vector<NeuronId> ids_;
    std::vector<std::int64_t> thresholds_;
    std::vector<std::uint32_t> leaky_;
    std::vector<std::uint32_t> out_begin_;  // CSR offsets, size() + 1 entries
    std::vector<std::uint32_t> out_target_;
    std::vector<std::int64_t> out_weight_;
    std::vector<Cycle> out_delay_;
    std::vector<std::int64_t> dense_index_;  // id -> index, -1 when absent
};

/// Charges scheduled for future cycles, bucketed by cycle.
class DeliveryQueue {
public:
    struct Delivery {
        std::uint32_t target;
        std::int64_t weight;
    };

    void push(Cycle at, Cycle now, std::uint32_t target, std::int64_t weight);
    /// Deliveries due at `now`; valid until the next call to pop().
    std::span<const Delivery> due(Cycle now) const;
    void pop(Cycle now);
    void clear();
    std::size_t size() const { return pending_; }
    bool empty() const { return pending_ == 0; }

private:
    std::vector<std::vector<Delivery>> ring_;
    std::size_t pending_ = 0;
};

struct EngineState {
    std::vector<std::int64_t> potential;
    std::vector<std::uint8_t> pending_fire;
    DeliveryQueue queue;
    Cycle cycle = 0;

    bool is_clear() const;
};

/// Soft reset: zero potentials, drop pending fires and in-flight charge.
EngineState clear(EngineState state);

/// Cycle-accurate integrate-and-fire simulator. One engine per thread; the
/// compiled network may be shared.
///
/// Per cycle c: (a) neurons flagged in c-1 fire, reset to 0 and enqueue their
/// weights for c + delay; (b) external spikes and deliveries due at c are
/// added; (c) potential > threshold flags a fire for c+1; (d) leaky neurons
/// are zeroed, keeping any flag set in (c).
class Engine {
public:
    explicit Engine(const CompiledNetwork& net);

    /// Clears the state, then simulates cycles [0, n_cycles). The final state
    /// is left in place for inspection. Throws std::invalid_argument for
    /// spikes at cycle >= n_cycles or at unknown neurons.
    FireRecord run(const SpikeSchedule& schedule, Cycle n_cycles);

    void clear();
    const EngineState& state() const { return state_; }

private:
    const CompiledNetwork* net_;
    EngineState state_;
    std::vector<std::uint32_t> flagged_;
    std::vector<std::pair<Cycle, std::uint32_t>> inputs_;
    std::vector<Fire> fires_;
};

FireRecord run(const Network& net, const SpikeSchedule& schedule, Cycle n_cycles);

}  // namespace evsnn
