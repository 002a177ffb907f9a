#pragma once

#include <cstdint>
#include <string>

#include "evsnn/engine.hpp"
#include "evsnn/network.hpp"

namespace evsnn {

enum class SpeedVariant {
    FilterSlow,  // drop events with neighborhood count <= t_s
    FilterFast,  // drop events with neighborhood count > t_s
};

struct SpeedFilterParams {
    int epsilon = 1;
    int threshold = 0;
    SpeedVariant variant = SpeedVariant::FilterSlow;
};

struct DbscanParams {
    int epsilon = 1;
    int min_points = 1;
};

enum class NetworkKind { SpeedSlow, SpeedFast, Dbscan };

/// Position in a (2ε+1) x (2ε+1) input bank; row = dy + ε, col = dx + ε.
struct GridIndex {
    int row = 0;
    int col = 0;

    friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

inline int patch_width(int epsilon) { return 2 * epsilon + 1; }

/// Neuron ids produced by build_speed_slow / build_speed_fast.
struct SpeedLayout {
    int epsilon = 1;
    NeuronId counter = 0;  // O: output of the slow variant, hidden in the fast one
    NeuronId bias = 0;     // I_b, fast variant only
    NeuronId output = 0;   // O_n, fast variant only
    bool fast = false;

    NeuronId input(GridIndex g) const { return static_cast<NeuronId>(g.row * patch_width(epsilon) + g.col); }
    NeuronId decision() const { return fast ? output : counter; }
    Cycle cycles() const { return fast ? 5 : 4; }
};

/// Neuron ids produced by build_dbscan.
struct DbscanLayout {
    int epsilon = 1;
    int min_points = 1;
    NeuronId h0 = 0, h1 = 0, h2 = 0, h3 = 0;
    NeuronId core = 0;    // O_c
    NeuronId border = 0;  // O_b

    NeuronId event_input(GridIndex g) const { return static_cast<NeuronId>(g.row * patch_width(epsilon) + g.col); }
    NeuronId neighbor_input(GridIndex g) const
    {
        const int w = patch_width(epsilon);
        return static_cast<NeuronId>(w * w + g.row * w + g.col);
    }
    Cycle cycles() const { return static_cast<Cycle>(min_points + 4); }
};

/// Throws std::invalid_argument on out-of-range parameters.
void check_params(const SpeedFilterParams& p);
void check_params(const DbscanParams& p);

SpeedLayout speed_layout(const SpeedFilterParams& p);
DbscanLayout dbscan_layout(const DbscanParams& p);

Network build_speed_slow(const SpeedFilterParams& p);
Network build_speed_fast(const SpeedFilterParams& p);
/// Dispatches on p.variant.
Network build_speed(const SpeedFilterParams& p);
Network build_dbscan(const DbscanParams& p);

struct ResourceCounts {
    std::uint64_t neurons = 0;
    std::uint64_t synapses = 0;
    std::uint64_t cycles_per_event = 0;

    friend bool operator==(const ResourceCounts&, const ResourceCounts&) = default;
};

/// `threshold` is min_points for Dbscan and ignored otherwise.
ResourceCounts resource_counts(NetworkKind kind, int epsilon, int threshold = 0);

std::string to_string(SpeedVariant v);
std::string to_string(NetworkKind k);

}  // namespace evsnn
