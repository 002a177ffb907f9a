#pragma once

#include <string>
#include <vector>

#include "evsnn/builders.hpp"
#include "evsnn/engine.hpp"
#include "evsnn/events.hpp"
#include "evsnn/network.hpp"
#include "evsnn/pixel.hpp"

namespace evsnn {

/// A named worked example: a network, the schedule the harness
/// encodes for the scenario, and the neuron columns the table shows.
struct TableScenario {
    std::string name;
    std::string title;
    Network network;
    SpikeSchedule schedule;
    Cycle cycles = 0;
    std::vector<std::string> columns;
};

// Pixel scenes behind the DBSCAN examples (ε = 1, min_points = 3).
struct DbscanScene {
    PointSet points;
    Pixel event;
};
DbscanScene noise_scene();   // a lone event
DbscanScene core_scene();    // event with three diagonal neighbours
DbscanScene border_scene();  // event whose only neighbour is core

// Speed-filter scenes: previous/current bins around an event at `event`.
struct SpeedScene {
    SpeedFilterParams params;
    BinnedFrame prev;
    BinnedFrame cur;
    Pixel event;
};
SpeedScene speed_scene(int table);  // 1..4

/// The four speed scenarios, then the DBSCAN noise, core and border runs
/// (core and border each shown once per input bank).
std::vector<TableScenario> table_scenarios();

struct SceneConfig {
    Extent extent{96, 64};
    std::int64_t duration_us = 50000;
    std::int32_t bar_x0 = 8;
    std::int32_t bar_y0 = 16;
    std::int32_t bar_width = 2;
    std::int32_t bar_height = 32;
    std::int64_t us_per_pixel = 1000;  // bar moves one column per step
    int bar_fill_percent = 60;
    std::size_t salt_events = 60;
    std::uint64_t seed = 1;
};

struct SyntheticScene {
    std::vector<Event> events;  // sorted by t_us
    std::vector<bool> salt;     // parallel to events
};

/// Vertical bar moving right (wrapping at the edge) plus uniform salt noise.
/// Deterministic for a seed.
SyntheticScene make_scene(const SceneConfig& config);

/// Uniformly random pixels inside a width x height window, each present with
/// probability `density` in [0, 1]. Deterministic for a seed.
PointSet random_points(std::int32_t width, std::int32_t height, double density, std::uint64_t seed);

}  // namespace evsnn
