#include "evsnn/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace evsnn {

std::vector<NeuronId> SpikeSchedule::at(Cycle cycle) const
{
    std::vector<NeuronId> out;
    for (const auto& s : entries) {
        if (s.cycle == cycle) out.push_back(s.neuron);
    }
    return out;
}

FireRecord::FireRecord(std::vector<Fire> fires) : fires_(std::move(fires))
{
    std::sort(fires_.begin(), fires_.end(), [](const Fire& a, const Fire& b) {
        return a.cycle != b.cycle ? a.cycle < b.cycle : a.neuron < b.neuron;
    });
}

std::vector<Cycle> FireRecord::cycles(NeuronId id) const
{
    std::vector<Cycle> out;
    for (const auto& f : fires_) {
        if (f.neuron == id) out.push_back(f.cycle);
    }
    return out;
}

std::size_t FireRecord::count(NeuronId id) const
{
    return static_cast<std::size_t>(
        std::count_if(fires_.begin(), fires_.end(), [id](const Fire& f) { return f.neuron == id; }));
}

std::optional<Cycle> FireRecord::first(NeuronId id) const
{
    for (const auto& f : fires_) {
        if (f.neuron == id) return f.cycle;
    }
    return std::nullopt;
}

bool FireRecord::fired_at(NeuronId id, Cycle cycle) const
{
    return std::binary_search(fires_.begin(), fires_.end(), Fire{cycle, id}, [](const Fire& a, const Fire& b) {
        return a.cycle != b.cycle ? a.cycle < b.cycle : a.neuron < b.neuron;
    });
}

std::map<NeuronId, std::vector<Cycle>> FireRecord::by_neuron() const
{
    std::map<NeuronId, std::vector<Cycle>> out;
    for (const auto& f : fires_) out[f.neuron].push_back(f.cycle);
    return out;
}

CompiledNetwork::CompiledNetwork(const Network& net)
{
    if (auto violations = validate_network(net); !violations.empty()) {
        throw std::invalid_argument("invalid network: " + violations.front().detail);
    }

    const std::size_t n = net.neurons.size();
    NeuronId max_id = 0;
    for (const auto& spec : net.neurons) max_id = std::max(max_id, spec.id);
    dense_index_.assign(n == 0 ? 0 : static_cast<std::size_t>(max_id) + 1, -1);

    ids_.reserve(n);
    thresholds_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto& spec = net.neurons[i];
        ids_.push_back(spec.id);
        thresholds_.push_back(spec.threshold);
        if (spec.leak) leaky_.push_back(i);
        dense_index_[spec.id] = i;
    }

    out_begin_.assign(n + 1, 0);
    for (const auto& s : net.synapses) ++out_begin_[static_cast<std::size_t>(dense_index_[s.pre]) + 1];
    for (std::size_t i = 0; i < n; ++i) out_begin_[i + 1] += out_begin_[i];

    out_target_.resize(net.synapses.size());
    out_weight_.resize(net.synapses.size());
    out_delay_.resize(net.synapses.size());
    std::vector<std::uint32_t> cursor(out_begin_.begin(), out_begin_.end() - 1);
    for (const auto& s : net.synapses) {
        const std::uint32_t slot = cursor[static_cast<std::size_t>(dense_index_[s.pre])]++;
        out_target_[slot] = static_cast<std::uint32_t>(dense_index_[s.post]);
        out_weight_[slot] = s.weight;
        out_delay_[slot] = static_cast<Cycle>(s.delay);
    }
}

std::optional<std::uint32_t> CompiledNetwork::index_of(NeuronId id) const
{
    if (id >= dense_index_.size() || dense_index_[id] < 0) return std::nullopt;
    return static_cast<std::uint32_t>(dense_index_[id]);
}

void DeliveryQueue::push(Cycle at, Cycle now, std::uint32_t target, std::int64_t weight)
{
    const std::size_t offset = at - now;
    if (offset >= ring_.size()) {
        std::size_t size = std::max<std::size_t>(ring_.size(), 4);
        while (size <= offset) size *= 2;
        std::vector<std::vector<Delivery>> grown(size);
        for (std::size_t k = 0; k < ring_.size(); ++k) {
            // Bucket for cycle now + k.
            grown[(now + k) % size] = std::move(ring_[(now + k) % ring_.size()]);
        }
        ring_ = std::move(grown);
    }
    ring_[at % ring_.size()].push_back({target, weight});
    ++pending_;
}

std::span<const DeliveryQueue::Delivery> DeliveryQueue::due(Cycle now) const
{
    if (ring_.empty()) return {};
    return ring_[now % ring_.size()];
}

void DeliveryQueue::pop(Cycle now)
{
    if (ring_.empty()) return;
    auto& bucket = ring_[now % ring_.size()];
    pending_ -= bucket.size();
    bucket.clear();
}

void DeliveryQueue::clear()
{
    for (auto& bucket : ring_) bucket.clear();
    pending_ = 0;
}

bool EngineState::is_clear() const
{
    return cycle == 0 && queue.empty() && std::all_of(potential.begin(), potential.end(), [](auto v) { return v == 0; }) &&
           std::all_of(pending_fire.begin(), pending_fire.end(), [](auto v) { return v == 0; });
}

EngineState clear(EngineState state)
{
    std::fill(state.potential.begin(), state.potential.end(), 0);
    std::fill(state.pending_fire.begin(), state.pending_fire.end(), 0);
    state.queue.clear();
    state.cycle = 0;
    return state;
}

Engine::Engine(const CompiledNetwork& net) : net_(&net)
{
    state_.potential.assign(net.size(), 0);
    state_.pending_fire.assign(net.size(), 0);
}

void Engine::clear()
{
    state_ = evsnn::clear(std::move(state_));
    flagged_.clear();
}

FireRecord Engine::run(const SpikeSchedule& schedule, Cycle n_cycles)
{
    const CompiledNetwork& net = *net_;
    inputs_.clear();
    inputs_.reserve(schedule.size());
    for (const auto& s : schedule.entries) {
        if (s.cycle >= n_cycles) {
            throw std::invalid_argument("spike at cycle " + std::to_string(s.cycle) + " is outside the " +
                                        std::to_string(n_cycles) + "-cycle run");
        }
        auto index = net.index_of(s.neuron);
        if (!index) throw std::invalid_argument("spike targets unknown neuron " + std::to_string(s.neuron));
        inputs_.emplace_back(s.cycle, *index);
    }
    std::stable_sort(inputs_.begin(), inputs_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    clear();
    fires_.clear();
    auto& potential = state_.potential;
    auto& pending = state_.pending_fire;
    std::size_t next_input = 0;

    for (Cycle c = 0; c < n_cycles; ++c) {
        state_.cycle = c;

        // (a) fire
        for (std::uint32_t i : flagged_) {
            fires_.push_back({c, net.ids_[i]});
            potential[i] = 0;
            pending[i] = 0;
            for (std::uint32_t e = net.out_begin_[i]; e < net.out_begin_[i + 1]; ++e) {
                state_.queue.push(c + net.out_delay_[e], c, net.out_target_[e], net.out_weight_[e]);
            }
        }
        flagged_.clear();

        // (b) integrate
        for (; next_input < inputs_.size() && inputs_[next_input].first == c; ++next_input) {
            ++potential[inputs_[next_input].second];
        }
        for (const auto& d : state_.queue.due(c)) potential[d.target] += d.weight;
        state_.queue.pop(c);

        // (c) threshold
        for (std::uint32_t i = 0; i < potential.size(); ++i) {
            if (potential[i] > net.thresholds_[i]) {
                pending[i] = 1;
                flagged_.push_back(i);
            }
        }

        // (d) leak
        for (std::uint32_t i : net.leaky_) potential[i] = 0;
    }
    state_.cycle = n_cycles;

    return FireRecord(std::move(fires_));
}

FireRecord run(const Network& net, const SpikeSchedule& schedule, Cycle n_cycles)
{
    CompiledNetwork compiled(net);
    Engine engine(compiled);
    return engine.run(schedule, n_cycles);
}

}  // namespace evsnn
