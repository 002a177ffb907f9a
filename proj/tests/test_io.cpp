#include <doctest.h>

#include <sstream>

#include "evsnn/builders.hpp"
#include "evsnn/labels.hpp"
#include "evsnn/spike_io.hpp"

using namespace evsnn;

namespace {

std::vector<LabeledWindow> parse_labels(const std::string& text)
{
    std::istringstream in(text);
    return read_labels(in);
}

}  // namespace

TEST_CASE("label CSV round-trip")
{
    const std::vector<LabeledWindow> windows{
        {0, 50000, {{{3, 1}, Classification::Core}, {{0, 2}, Classification::Border}}},
        {50000, 50000, {}},
        {100000, 50000, {{{7, 7}, Classification::Border}}},
    };
    const std::string text = labels_to_string(windows);
    CHECK(text.rfind("x,y,label\n# window 0 0 50000\n", 0) == 0);
    CHECK(parse_labels(text) == windows);
}

TEST_CASE("label rows are written row-major")
{
    const std::string text = labels_to_string({{0, 10, {{{5, 0}, Classification::Core}, {{0, 1}, Classification::Core}}}});
    CHECK(text == "x,y,label\n# window 0 0 10\n5,0,core\n0,1,core\n");
}

TEST_CASE("label CSV without window markers")
{
    const auto w = parse_labels("x,y,label\n1,2,core\n3,4,noise\n");
    REQUIRE(w.size() == 1);
    CHECK(w[0].labels.at({1, 2}) == Classification::Core);
    CHECK(w[0].labels.at({3, 4}) == Classification::Noise);
    CHECK(parse_labels("").empty());
    CHECK(parse_labels("x,y,label\n").empty());
}

TEST_CASE("label CSV errors")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_labels(text);
        } catch (const LabelParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("x,y,label\n1,2,corey\n") == 2);
    CHECK(line_of("x,y,label\n1,2\n") == 2);
    CHECK(line_of("x,y,label\n1,2,core\n1,2,border\n") == 3);
    CHECK(line_of("x,y,label\n# window 1 0 10\n") == 2);
    CHECK(line_of("x,y,label\na,2,core\n") == 2);
}

TEST_CASE("without_noise")
{
    const LabelMap m{{{0, 0}, Classification::Noise}, {{1, 0}, Classification::Core}};
    CHECK(without_noise(m) == LabelMap{{{1, 0}, Classification::Core}});
    CHECK(parse_classification("border") == Classification::Border);
    CHECK_FALSE(parse_classification("Border").has_value());
}

TEST_CASE("schedule CSV")
{
    SpikeSchedule s;
    s.add(0, 3);
    s.add(1, 4);
    std::ostringstream out;
    write_schedule(out, s);
    CHECK(out.str() == "cycle,neuron\n0,3\n1,4\n");
    std::istringstream in(out.str());
    CHECK(read_schedule(in).entries == s.entries);

    std::istringstream bad("cycle,neuron\n0,3\nx,1\n");
    try {
        read_schedule(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.where() == "line 3");
    }
    std::istringstream negative("-1,2\n");
    CHECK_THROWS_AS(read_schedule(negative), ParseError);
}

TEST_CASE("fire CSV is sorted by cycle then neuron")
{
    std::ostringstream out;
    write_fires(out, FireRecord({{2, 1}, {1, 5}, {1, 2}}));
    CHECK(out.str() == "neuron,cycle\n2,1\n5,1\n1,2\n");
}

TEST_CASE("spike table with an empty schedule is all blanks")
{
    const Network net = build_speed_slow({1, 10, SpeedVariant::FilterSlow});
    const std::string table = format_spike_table(net, {}, {}, 4, {"I_1_1", "O"});
    CHECK(table.find('*') == std::string::npos);
    std::istringstream lines(table);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 5);
    CHECK_THROWS_AS(format_spike_table(net, {}, {}, 4, {"nope"}), std::out_of_range);
}
