#include <doctest.h>

#include "evsnn/builders.hpp"
#include "evsnn/network.hpp"
#include "support.hpp"

using namespace evsnn;
using evsnn::testing::make_net;
using evsnn::testing::neuron;

namespace {

bool has(const std::vector<Violation>& v, Violation::Kind kind)
{
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == kind; });
}

std::vector<Network> builder_sweep()
{
    std::vector<Network> out;
    for (int eps = 1; eps <= 3; ++eps) {
        for (int t = 0; t <= 12; ++t) {
            out.push_back(build_speed_slow({eps, t, SpeedVariant::FilterSlow}));
            out.push_back(build_speed_fast({eps, t, SpeedVariant::FilterFast}));
            if (t >= 1) out.push_back(build_dbscan({eps, t}));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("validate_network")
{
    CHECK(validate_network(build_speed_slow({1, 10, SpeedVariant::FilterSlow})).empty());
    CHECK(validate_network(Network{}).empty());

    const auto dangling = validate_network(make_net({neuron(0, 0)}, {{99, 0, 1, 0}}));
    REQUIRE(dangling.size() == 1);
    CHECK(dangling[0].kind == Violation::Kind::DanglingEndpoint);

    CHECK(has(validate_network(make_net({neuron(0, 0), neuron(0, 1)})), Violation::Kind::DuplicateId));
    CHECK(has(validate_network(make_net({neuron(0, 0)}, {{0, 0, 1, -1}})), Violation::Kind::NegativeDelay));

    Network io = make_net({neuron(0, 0)});
    io.inputs = {3};
    io.outputs = {4};
    const auto v = validate_network(io);
    CHECK(has(v, Violation::Kind::UnknownInput));
    CHECK(has(v, Violation::Kind::UnknownOutput));
}

TEST_CASE("network lookups")
{
    const Network net = build_speed_fast({1, 7, SpeedVariant::FilterFast});
    CHECK(net.find_label("O_n").has_value());
    CHECK(net.id_of("I_1_1") == 4);
    CHECK_THROWS_AS(net.id_of("nope"), std::out_of_range);
    CHECK(net.display_name(net.id_of("I_b")) == "I_b");
    CHECK(net.find(12345) == nullptr);
}

TEST_CASE("save then load is the identity for every builder output")
{
    for (const Network& net : builder_sweep()) {
        const std::string doc = save_network(net);
        const Network back = load_network(doc);
        CHECK(back == net);
        CHECK(save_network(back) == doc);
    }
}

TEST_CASE("loading the DBSCAN network document")
{
    const Network net = load_network(save_network(build_dbscan({1, 3})));
    CHECK(net.neurons.size() == 24);
    CHECK(net.synapses.size() == 34);
}

TEST_CASE("load_network errors name the offending field")
{
    CHECK_THROWS_AS(load_network(""), ParseError);
    CHECK_THROWS_AS(load_network("{"), ParseError);
    CHECK_THROWS_AS(load_network("[]"), ParseError);

    auto where = [](std::string_view doc) {
        try {
            load_network(doc);
        } catch (const ParseError& e) {
            return e.where();
        }
        return std::string("no error");
    };
    CHECK(where(R"({"synapses":[],"inputs":[],"outputs":[]})") == "/neurons");
    CHECK(where(R"({"neurons":[{"id":0,"leak":false}],"synapses":[],"inputs":[],"outputs":[]})") ==
          "/neurons/0/threshold");
    CHECK(where(R"({"neurons":[{"id":0,"threshold":0,"leak":false}],)"
                R"("synapses":[{"pre":0,"post":0,"weight":"x","delay":0}],"inputs":[],"outputs":[]})") ==
          "/synapses/0/weight");
}

TEST_CASE("optional fields may be omitted")
{
    const Network net = load_network(
        R"({"neurons":[{"id":5,"threshold":2,"leak":true}],"synapses":[],"inputs":[5],"outputs":[]})");
    REQUIRE(net.neurons.size() == 1);
    CHECK(net.neurons[0].leak);
    CHECK_FALSE(net.neurons[0].label.has_value());
    CHECK(net.meta.empty());
}
