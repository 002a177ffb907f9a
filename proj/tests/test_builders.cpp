#include <doctest.h>

#include <set>

#include "evsnn/builders.hpp"
#include "evsnn/engine.hpp"
#include "evsnn/network.hpp"

using namespace evsnn;

namespace {

std::multiset<std::pair<NeuronId, std::int64_t>> in_edges(const Network& net, NeuronId post)
{
    std::multiset<std::pair<NeuronId, std::int64_t>> out;
    for (const auto& s : net.synapses) {
        if (s.post == post) out.insert({s.pre, s.weight});
    }
    return out;
}

std::int64_t threshold(const Network& net, const char* label)
{
    return net.find(net.id_of(label))->threshold;
}

}  // namespace

TEST_CASE("slow speed filter sizes")
{
    const Network a = build_speed_slow({1, 10, SpeedVariant::FilterSlow});
    CHECK(a.neurons.size() == 10);
    CHECK(a.synapses.size() == 9);
    CHECK(threshold(a, "O") == 10);
    CHECK(a.outputs == std::vector<NeuronId>{a.id_of("O")});
    CHECK(a.inputs.size() == 9);

    const Network b = build_speed_slow({2, 0, SpeedVariant::FilterSlow});
    CHECK(b.neurons.size() == 26);
    CHECK(b.synapses.size() == 25);
}

TEST_CASE("threshold-zero slow filter passes a lone center spike")
{
    const SpeedFilterParams p{1, 0, SpeedVariant::FilterSlow};
    const Network net = build_speed_slow(p);
    SpikeSchedule s;
    s.add(1, net.id_of("I_1_1"));
    CHECK(run(net, s, 4).fired(net.id_of("O")));
}

TEST_CASE("fast speed filter sizes and extra neurons")
{
    const Network net = build_speed_fast({1, 7, SpeedVariant::FilterFast});
    CHECK(net.neurons.size() == 12);
    CHECK(net.synapses.size() == 12);
    CHECK(threshold(net, "O_n") == 2);
    CHECK(threshold(net, "I_b") == 0);
    CHECK(threshold(net, "O") == 7);
    CHECK(net.outputs == std::vector<NeuronId>{net.id_of("O_n")});
    CHECK(net.inputs.size() == 10);
    const NeuronId on = net.id_of("O_n");
    CHECK(in_edges(net, on) == std::multiset<std::pair<NeuronId, std::int64_t>>{{net.id_of("I_b"), 1}, {net.id_of("O"), -1}});
    CHECK(in_edges(net, net.id_of("I_b")) == std::multiset<std::pair<NeuronId, std::int64_t>>{{net.id_of("I_b"), 1}});
}

TEST_CASE("fast variant extends the slow variant")
{
    for (int eps = 1; eps <= 3; ++eps) {
        for (int t = 0; t <= 12; ++t) {
            const Network slow = build_speed_slow({eps, t, SpeedVariant::FilterSlow});
            const Network fast = build_speed_fast({eps, t, SpeedVariant::FilterFast});
            for (const auto& n : slow.neurons) {
                const NeuronSpec* f = fast.find(n.id);
                REQUIRE(f != nullptr);
                CHECK(f->threshold == n.threshold);
                CHECK(f->label == n.label);
            }
            for (const auto& s : slow.synapses) {
                CHECK(std::find(fast.synapses.begin(), fast.synapses.end(), s) != fast.synapses.end());
            }
            CHECK(fast.neurons.size() == slow.neurons.size() + 2);
            CHECK(fast.synapses.size() == slow.synapses.size() + 3);
        }
    }
}

TEST_CASE("DBSCAN network sizes and thresholds")
{
    const Network net = build_dbscan({1, 3});
    CHECK(net.neurons.size() == 24);
    CHECK(net.synapses.size() == 34);
    CHECK(threshold(net, "H0") == 1);
    CHECK(threshold(net, "H1") == 2);
    CHECK(threshold(net, "H2") == 0);
    CHECK(threshold(net, "H3") == 2);
    CHECK(threshold(net, "O_c") == 0);
    CHECK(threshold(net, "O_b") == 1);
    CHECK(net.find(net.id_of("H3"))->leak);
    CHECK_FALSE(net.find(net.id_of("H1"))->leak);
    for (const auto& s : net.synapses) CHECK(s.delay == 0);

    const Network big = build_dbscan({3, 10});
    CHECK(big.neurons.size() == 104);
    CHECK(big.synapses.size() == 154);
}

TEST_CASE("DBSCAN hidden and border wiring")
{
    for (int eps = 1; eps <= 3; ++eps) {
        for (int m = 1; m <= 12; ++m) {
            const Network net = build_dbscan({eps, m});
            using Edges = std::multiset<std::pair<NeuronId, std::int64_t>>;
            CHECK(in_edges(net, net.id_of("H2")) == Edges{{net.id_of("H0"), 1}, {net.id_of("H1"), -1}});
            CHECK(in_edges(net, net.id_of("O_b")) ==
                  Edges{{net.id_of("H2"), 1}, {net.id_of("H3"), 1}, {net.id_of("O_c"), -1}});
            CHECK(in_edges(net, net.id_of("O_c")) == Edges{{net.id_of("H1"), 1}, {net.id_of("O_c"), 1}});
        }
    }
}

TEST_CASE("labels encode the grid position")
{
    const Network net = build_dbscan({2, 4});
    const DbscanLayout layout = dbscan_layout({2, 4});
    CHECK(net.id_of("I_0_0") == layout.event_input({0, 0}));
    CHECK(net.id_of("I_2_2") == layout.event_input({2, 2}));
    CHECK(net.id_of("A_4_1") == layout.neighbor_input({4, 1}));
    CHECK(net.id_of("O_c") == layout.core);
    CHECK(net.id_of("O_b") == layout.border);
    CHECK(net.meta.at("kind") == "dbscan");
}

TEST_CASE("resource_counts")
{
    CHECK(resource_counts(NetworkKind::SpeedFast, 1) == ResourceCounts{12, 12, 5});
    CHECK(resource_counts(NetworkKind::Dbscan, 1, 3) == ResourceCounts{24, 34, 7});
    CHECK(resource_counts(NetworkKind::SpeedSlow, 3) == ResourceCounts{50, 49, 4});
}

TEST_CASE("built networks agree with resource_counts and validate")
{
    for (int eps = 1; eps <= 3; ++eps) {
        for (int t = 0; t <= 12; ++t) {
            const Network slow = build_speed_slow({eps, t, SpeedVariant::FilterSlow});
            const Network fast = build_speed_fast({eps, t, SpeedVariant::FilterFast});
            const auto rs = resource_counts(NetworkKind::SpeedSlow, eps, t);
            const auto rf = resource_counts(NetworkKind::SpeedFast, eps, t);
            CHECK(slow.neurons.size() == rs.neurons);
            CHECK(slow.synapses.size() == rs.synapses);
            CHECK(fast.neurons.size() == rf.neurons);
            CHECK(fast.synapses.size() == rf.synapses);
            CHECK(validate_network(slow).empty());
            CHECK(validate_network(fast).empty());
            if (t == 0) continue;
            const Network db = build_dbscan({eps, t});
            const auto rd = resource_counts(NetworkKind::Dbscan, eps, t);
            CHECK(db.neurons.size() == rd.neurons);
            CHECK(db.synapses.size() == rd.synapses);
            CHECK(rd.cycles_per_event == static_cast<std::uint64_t>(t) + 4);
            CHECK(validate_network(db).empty());
        }
    }
}

TEST_CASE("parameter checks")
{
    CHECK_THROWS_AS(build_speed_slow({0, 1, SpeedVariant::FilterSlow}), std::invalid_argument);
    CHECK_THROWS_AS(build_speed_fast({1, -1, SpeedVariant::FilterFast}), std::invalid_argument);
    CHECK_THROWS_AS(build_dbscan({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(build_dbscan({0, 3}), std::invalid_argument);
    CHECK_NOTHROW(build_dbscan({1, 1}));
    CHECK(build_speed({1, 3, SpeedVariant::FilterFast}).neurons.size() == 12);
    CHECK(build_speed({1, 3, SpeedVariant::FilterSlow}).neurons.size() == 10);
}
