#include "evsnn/builders.hpp"

#include <stdexcept>

namespace evsnn {

namespace {

std::string grid_label(char bank, int row, int col)
{
    return std::string(1, bank) + "_" + std::to_string(row) + "_" + std::to_string(col);
}

void add_neuron(Network& net, NeuronId id, std::int64_t threshold, bool leak, std::string label)
{
    net.neurons.push_back({id, threshold, leak, std::move(label)});
}

void add_synapse(Network& net, NeuronId pre, NeuronId post, std::int64_t weight)
{
    net.synapses.push_back({pre, post, weight, 0});
}

}  // namespace

void check_params(const SpeedFilterParams& p)
{
    if (p.epsilon < 1) throw std::invalid_argument("speed filter epsilon must be >= 1");
    if (p.threshold < 0) throw std::invalid_argument("speed threshold must be >= 0");
}

void check_params(const DbscanParams& p)
{
    if (p.epsilon < 1) throw std::invalid_argument("dbscan epsilon must be >= 1");
    if (p.min_points < 1) throw std::invalid_argument("min_points must be >= 1");
}

SpeedLayout speed_layout(const SpeedFilterParams& p)
{
    const auto k = static_cast<NeuronId>(patch_width(p.epsilon) * patch_width(p.epsilon));
    SpeedLayout layout;
    layout.epsilon = p.epsilon;
    layout.counter = k;
    layout.bias = k + 1;
    layout.output = k + 2;
    layout.fast = p.variant == SpeedVariant::FilterFast;
    return layout;
}

DbscanLayout dbscan_layout(const DbscanParams& p)
{
    const auto k = static_cast<NeuronId>(patch_width(p.epsilon) * patch_width(p.epsilon));
    DbscanLayout layout;
    layout.epsilon = p.epsilon;
    layout.min_points = p.min_points;
    layout.h0 = 2 * k;
    layout.h1 = 2 * k + 1;
    layout.h2 = 2 * k + 2;
    layout.h3 = 2 * k + 3;
    layout.core = 2 * k + 4;
    layout.border = 2 * k + 5;
    return layout;
}

Network build_speed_slow(const SpeedFilterParams& p)
{
    check_params(p);
    if (p.variant != SpeedVariant::FilterSlow) throw std::invalid_argument("build_speed_slow needs the slow variant");

    const SpeedLayout layout = speed_layout(p);
    const int w = patch_width(p.epsilon);
    Network net;
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) {
            const NeuronId id = layout.input({r, c});
            add_neuron(net, id, 0, false, grid_label('I', r, c));
            net.inputs.push_back(id);
        }
    }
    add_neuron(net, layout.counter, p.threshold, false, "O");
    for (NeuronId in : net.inputs) add_synapse(net, in, layout.counter, 1);
    net.outputs = {layout.counter};
    net.meta = {{"kind", "speed"},
                {"epsilon", std::to_string(p.epsilon)},
                {"threshold", std::to_string(p.threshold)},
                {"variant", to_string(p.variant)}};
    return net;
}

Network build_speed_fast(const SpeedFilterParams& p)
{
    check_params(p);
    if (p.variant != SpeedVariant::FilterFast) throw std::invalid_argument("build_speed_fast needs the fast variant");

    Network net = build_speed_slow({p.epsilon, p.threshold, SpeedVariant::FilterSlow});
    const SpeedLayout layout = speed_layout(p);
    add_neuron(net, layout.bias, 0, false, "I_b");
    add_neuron(net, layout.output, 2, false, "O_n");
    add_synapse(net, layout.bias, layout.bias, 1);
    add_synapse(net, layout.bias, layout.output, 1);
    add_synapse(net, layout.counter, layout.output, -1);
    net.inputs.push_back(layout.bias);
    net.outputs = {layout.output};
    net.meta["variant"] = to_string(p.variant);
    return net;
}

Network build_speed(const SpeedFilterParams& p)
{
    return p.variant == SpeedVariant::FilterFast ? build_speed_fast(p) : build_speed_slow(p);
}

// Hidden neurons, one predicate each (strict firing, so "> t"):
//   H0 > 1          the event has at least one neighbor
//   H1 > m - 1      the event is core (count includes the event itself)
//   H2 > 0          H0 fired and H1 did not
//   H3 > m - 1      the neighbor streamed this cycle is core (leaky: one neighbor per cycle)
Network build_dbscan(const DbscanParams& p)
{
    check_params(p);
    const DbscanLayout layout = dbscan_layout(p);
    const int w = patch_width(p.epsilon);
    const std::int64_t core_threshold = p.min_points - 1;

    Network net;
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) add_neuron(net, layout.event_input({r, c}), 0, false, grid_label('I', r, c));
    }
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) add_neuron(net, layout.neighbor_input({r, c}), 0, false, grid_label('A', r, c));
    }
    add_neuron(net, layout.h0, 1, false, "H0");
    add_neuron(net, layout.h1, core_threshold, false, "H1");
    add_neuron(net, layout.h2, 0, false, "H2");
    add_neuron(net, layout.h3, core_threshold, true, "H3");
    add_neuron(net, layout.core, 0, false, "O_c");
    add_neuron(net, layout.border, 1, false, "O_b");

    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) {
            add_synapse(net, layout.event_input({r, c}), layout.h0, 1);
            add_synapse(net, layout.event_input({r, c}), layout.h1, 1);
        }
    }
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) add_synapse(net, layout.neighbor_input({r, c}), layout.h3, 1);
    }
    add_synapse(net, layout.h0, layout.h2, 1);
    add_synapse(net, layout.h1, layout.core, 1);
    add_synapse(net, layout.h2, layout.border, 1);
    add_synapse(net, layout.core, layout.core, 1);
    add_synapse(net, layout.h3, layout.border, 1);
    add_synapse(net, layout.h1, layout.h2, -1);
    add_synapse(net, layout.core, layout.border, -1);

    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) net.inputs.push_back(layout.event_input({r, c}));
    }
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) net.inputs.push_back(layout.neighbor_input({r, c}));
    }
    net.outputs = {layout.core, layout.border};
    net.meta = {{"kind", "dbscan"},
                {"epsilon", std::to_string(p.epsilon)},
                {"threshold", std::to_string(p.min_points)},
                {"min_points", std::to_string(p.min_points)}};
    return net;
}

ResourceCounts resource_counts(NetworkKind kind, int epsilon, int threshold)
{
    const auto w = static_cast<std::uint64_t>(patch_width(epsilon));
    const std::uint64_t k = w * w;
    switch (kind) {
    case NetworkKind::SpeedSlow: return {k + 1, k, 4};
    case NetworkKind::SpeedFast: return {k + 3, k + 3, 5};
    case NetworkKind::Dbscan: return {2 * k + 6, 3 * k + 7, static_cast<std::uint64_t>(threshold) + 4};
    }
    throw std::invalid_argument("unknown network kind");
}

std::string to_string(SpeedVariant v)
{
    return v == SpeedVariant::FilterFast ? "fast" : "slow";
}

std::string to_string(NetworkKind k)
{
    switch (k) {
    case NetworkKind::SpeedSlow: return "speed-slow";
    case NetworkKind::SpeedFast: return "speed-fast";
    case NetworkKind::Dbscan: return "dbscan";
    }
    return "unknown";
}

}  // namespace evsnn
