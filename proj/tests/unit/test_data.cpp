#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "criskeq/data.hpp"

using namespace criskeq;

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        path = std::string(std::tmpnam(nullptr)) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv ingestion parses and validates") {
    TempCsv file("group,time,state\n1,14.0,2\n1,90.0,0\n2,3.5,1\n");
    auto samples = ingest_csv(file.path, 3, 90.0);
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].group == 1);
    CHECK(samples[0].n() == 2);
    CHECK(samples[0].observations[0].time == doctest::Approx(14.0));
    CHECK(samples[0].observations[0].state == 2);
    CHECK(samples[0].observations[1].time == doctest::Approx(90.0));
    CHECK(samples[0].observations[1].state == 0);
    CHECK(samples[1].group == 2);
    CHECK(samples[1].k == 3);
}

TEST_CASE("csv ingestion rejects bad rows with row numbers") {
    {
        TempCsv file("group,time,state\n1,5.0,1\n2,-3,1\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file.path, 3, 90.0), doctest::Contains("row 3"),
                             std::invalid_argument);
    }
    {
        TempCsv file("group,time,state\n1,5.0,7\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file.path, 3, 90.0), doctest::Contains("out of range"),
                             std::invalid_argument);
    }
    {
        TempCsv file("group,time,state\n5,5.0,1\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file.path, 3, 90.0), doctest::Contains("unknown group"),
                             std::invalid_argument);
    }
    {
        TempCsv file("time,group,state\n");
        CHECK_THROWS_AS(ingest_csv(file.path, 3, 90.0), std::invalid_argument);
    }
    {
        TempCsv file("group,time,state\n1,abc,1\n");
        CHECK_THROWS_WITH_AS(ingest_csv(file.path, 3, 90.0), doctest::Contains("row 2"),
                             std::invalid_argument);
    }
}

TEST_CASE("csv round-trips") {
    TempCsv file("group,time,state\n1,14.25,2\n1,90,0\n2,3.5,1\n2,0.125,3\n");
    auto samples = ingest_csv(file.path, 3, 90.0);
    TempCsv copy("");
    write_csv(copy.path, samples);
    auto again = ingest_csv(copy.path, 3, 90.0);
    REQUIRE(again.size() == samples.size());
    for (std::size_t g = 0; g < samples.size(); ++g) {
        REQUIRE(again[g].n() == samples[g].n());
        for (int i = 0; i < samples[g].n(); ++i) {
            CHECK(again[g].observations[i].time == samples[g].observations[i].time);
            CHECK(again[g].observations[i].state == samples[g].observations[i].state);
        }
    }
}

TEST_CASE("event counts partition the sample") {
    Sample s;
    s.group = 1;
    s.k = 2;
    s.horizon = 90.0;
    s.observations = {{5.0, 1}, {7.0, 0}, {2.0, 2}};
    auto c = event_counts(s);
    CHECK(c.events[0] == 1);
    CHECK(c.events[1] == 1);
    CHECK(c.censored == 1);
    CHECK(c.exposure == doctest::Approx(14.0));
    CHECK(c.events[0] + c.events[1] + c.censored == s.n());
}

TEST_CASE("application-scale event counts") {
    // 213 subjects, 17/18/6 events across three states, remainder censored at 90
    Sample s;
    s.group = 1;
    s.k = 3;
    s.horizon = 90.0;
    for (int i = 0; i < 17; ++i) s.observations.push_back({10.0 + i, 1});
    for (int i = 0; i < 18; ++i) s.observations.push_back({20.0 + i, 2});
    for (int i = 0; i < 6; ++i) s.observations.push_back({30.0 + i, 3});
    while (s.n() < 213) s.observations.push_back({90.0, 0});
    auto c = event_counts(s);
    CHECK(c.events[0] == 17);
    CHECK(c.events[1] == 18);
    CHECK(c.events[2] == 6);
    CHECK(c.censored == 172);
    CHECK(c.events[0] + c.events[1] + c.events[2] + c.censored == 213);
}

TEST_CASE("zero-event states count zero") {
    Sample s;
    s.group = 2;
    s.k = 3;
    s.horizon = 90.0;
    s.observations = {{5.0, 1}, {6.0, 1}};
    auto c = event_counts(s);
    CHECK(c.events[1] == 0);
    CHECK(c.events[2] == 0);
}

TEST_CASE("sample and censoring validation") {
    Sample s;
    s.group = 1;
    s.k = 1;
    s.horizon = 90.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // empty

    s.observations = {{-1.0, 1}};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);

    s.observations = {{5.0, 1}, {95.0, 0}};
    CHECK_NOTHROW(s.validate());
    CHECK_THROWS_AS(s.check_administrative(90.0), std::invalid_argument);

    CHECK_THROWS_AS(CensoringModel::administrative(0.0).validate(), std::invalid_argument);
    CHECK_NOTHROW(CensoringModel::administrative(90.0).validate());
    CHECK_NOTHROW(
        CensoringModel::parametric(Intensity::make_exponential(0.003), 90.0).validate());
}
