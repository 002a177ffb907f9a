#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evsnn/engine.hpp"
#include "evsnn/network.hpp"

namespace evsnn {

/// `cycle,neuron` rows. Throws ParseError naming the line.
SpikeSchedule read_schedule(std::istream& in);
void write_schedule(std::ostream& out, const SpikeSchedule& schedule);

/// `neuron,cycle` rows sorted by cycle, then neuron.
void write_fires(std::ostream& out, const FireRecord& fires);

/// Spike table: one row per cycle, an "apply" column listing the external
/// spikes, then one column per neuron with "*" where it fired and "-"
/// otherwise. `columns` are neuron labels; empty means every labelled neuron.
std::string format_spike_table(const Network& net, const SpikeSchedule& schedule, const FireRecord& fires,
                               Cycle n_cycles, const std::vector<std::string>& columns = {});

}  // namespace evsnn
