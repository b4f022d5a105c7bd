#include <doctest.h>

#include "fixtures.hpp"
#include "k3dual/pipeline.hpp"

using namespace k3dual;

namespace {

const std::vector<DualityReport>& all_reports() {
    static const std::vector<DualityReport> r = verify_pairs(builtin_cases());
    return r;
}

const DualityReport& report(const std::string& name) {
    for (const auto& r : all_reports())
        if (r.case_name == name) return r;
    throw std::runtime_error("missing report " + name);
}

bool has_note(const DualityReport& r, int step, NoteLevel level, const std::string& fragment) {
    for (const auto& n : r.notes)
        if (n.step == step && n.level == level && n.text.find(fragment) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("builtin dataset") {
    const auto& cases = builtin_cases();
    REQUIRE(cases.size() == 4);
    CHECK(cases[0].name == "Z10");
    CHECK(cases[1].name == "U10");
    CHECK(cases[2].name == "Q17_Z20");
    CHECK(cases[3].name == "W10");
    CHECK(cases[0].expected.delta_prime.picard == std::string("U+A1+A3"));
    CHECK(cases[1].expected.delta_prime.picard == std::string("[[0,3],[3,-2]]+A1"));
    CHECK(cases[0].delta_prime_config.ordering->size() == 9);
    CHECK_FALSE(builtin_case("nope"));
}

TEST_CASE("case JSON round trip") {
    for (const auto& c : builtin_cases()) {
        Json j = case_to_json(c);
        CaseDefinition back = case_from_json(j, "roundtrip");
        CHECK(case_to_json(back) == j);
        CHECK(j["dropped"]["delta_prime"].size() == 3);
    }
    CHECK_THROWS(case_from_json(Json::parse(R"({"name":"x"})"), "bad"));
}

TEST_CASE("all builtin pairs pass") {
    const std::map<std::string, std::array<long, 3>> table = {
        {"Z10", {14, 8, 6}}, {"U10", {17, 18, 3}}, {"Q17_Z20", {15, 6, 5}}, {"W10", {18, 4, 2}}};
    for (const auto& r : all_reports()) {
        CAPTURE(r.case_name);
        CHECK(r.passed);
        CHECK(r.steps.size() == 10);
        CHECK(r.delta.counts->from_rays == table.at(r.case_name)[0]);
        CHECK(abs(r.delta.det) == table.at(r.case_name)[1]);
        CHECK(r.delta_prime.counts->from_rays == table.at(r.case_name)[2]);
        CHECK(*r.rho_sum == 20);
        CHECK(r.orthogonality->witness);
        CHECK(r.orthogonality->determinants_opposite);
        CHECK(r.orthogonality->shortcut_agrees);
        CHECK(r.equivalence);
    }
}

TEST_CASE("printed discrepancies are warnings") {
    CHECK(has_note(report("U10"), 7, NoteLevel::Warn, "l(A)"));
    CHECK(has_note(report("Z10"), 7, NoteLevel::Warn, "computed 6"));
    CHECK(has_note(report("Z10"), 7, NoteLevel::Warn, "computed 8"));
    CHECK(has_note(report("Z10"), 9, NoteLevel::Warn, "U+E6+E8"));
    CHECK(has_note(report("W10"), 5, NoteLevel::Warn, "4,7,10"));
    CHECK(report("Q17_Z20").warnings() == 0);
}

TEST_CASE("splitting results") {
    const auto& u = *report("U10").delta.split;
    REQUIRE(u.plane);
    CHECK(u.plane->complement.lattice.rank() == 15);
    CHECK(u.complement_det == -18);
    const auto& w = *report("W10").delta.split;
    REQUIRE(w.plane);
    CHECK(w.plane->complement.lattice.rank() == 16);
    CHECK(w.complement_det == 4);
}

TEST_CASE("reports re-verify after serialization") {
    for (const auto& r : all_reports()) {
        Json j = report_to_json(r);
        Json reloaded = Json::parse(j.dump());
        ReverifyResult v = reverify_report(reloaded);
        CAPTURE(r.case_name);
        for (const auto& f : v.failures) MESSAGE(f);
        CHECK(v.ok());
    }
}

TEST_CASE("tampered witnesses are caught") {
    Json j = report_to_json(report("Q17_Z20"));
    j["equivalence"][0][0] = 5;
    CHECK_FALSE(reverify_report(j).witnesses_ok);

    Json k = report_to_json(report("W10"));
    k["delta"]["split"]["f"][3] = 7;
    CHECK_FALSE(reverify_report(k).ok());

    Json m = report_to_json(report("U10"));
    m["delta_prime"]["gram"][0][0] = 0;
    CHECK_FALSE(reverify_report(m).ok());

    Json v = report_to_json(report("Z10"));
    v["verdict"] = "FAIL";
    ReverifyResult rv = reverify_report(v);
    CHECK(rv.witnesses_ok);
    CHECK_FALSE(rv.verdict_reproduced);
}

TEST_CASE("reports are deterministic") {
    PipelineConfig cfg;
    cfg.concurrent = false;
    auto a = verify_pair(*builtin_case("Q17_Z20"), cfg);
    auto b = verify_pair(*builtin_case("Q17_Z20"), cfg);
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
    CHECK(report_to_json(a).dump() == report_to_json(report("Q17_Z20")).dump());
}

TEST_CASE("table text") {
    std::string t = table_text(all_reports());
    CHECK(t.find("Q_{17}") != std::string::npos);
    CHECK(t.find("U+E6+E7") != std::string::npos);
    CHECK(t.find("Z_{2,0}") != std::string::npos);
}

TEST_CASE("cube and octahedron") {
    CaseDefinition c;
    c.name = "cube";
    c.delta = {"cube", fixtures::cube_points()};
    c.delta_prime = {"octahedron", fixtures::octahedron_points()};
    DualityReport r = verify_pair(c);
    CHECK(r.step(1)->status == StepStatus::Pass);
    CHECK(r.step(2)->status == StepStatus::Pass);
    CHECK(r.step(4)->status == StepStatus::Pass);
    CHECK(*r.rho_sum == 20);

    c.expected.delta.rho = 16;
    DualityReport bad = verify_pair(c);
    CHECK(bad.step(4)->status == StepStatus::Fail);
    CHECK_FALSE(bad.passed);
}

TEST_CASE("swapped pairs keep the structural facts") {
    for (const auto& c : builtin_cases()) {
        CaseDefinition s;
        s.name = c.name + " swapped";
        s.delta = c.delta_prime;
        s.delta_prime = c.delta;
        DualityReport r = verify_pair(s);
        CAPTURE(c.name);
        CHECK(r.step(3)->status == StepStatus::Pass);
        CHECK(*r.rho_sum == 20);
    }
}

TEST_CASE("non-reflexive input fails early") {
    CaseDefinition c;
    c.name = "big";
    c.delta = {"big cube", fixtures::cube_points(2)};
    c.delta_prime = {"octahedron", fixtures::octahedron_points()};
    DualityReport r = verify_pair(c);
    CHECK(r.step(1)->status == StepStatus::Fail);
    CHECK(r.step(5)->status == StepStatus::Skipped);
    CHECK_FALSE(r.passed);
    CHECK(reverify_report(report_to_json(r)).ok());
}

}  // TEST_SUITE
