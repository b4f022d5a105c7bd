#include "k3dual/dataset.hpp"

#include <algorithm>

#include "k3dual/error.hpp"
#include "k3dual/picard.hpp"

namespace k3dual {

namespace {

using Pts = std::vector<LatticeVector>;

const std::vector<PrintedRays>& make_printed() {
    static const std::vector<PrintedRays> data = {
        {"Z10",
         {{1, -1, 0}, {-2, 0, -3}, {-6, 2, -7}, {0, 2, -1}, {1, 1, 0}, {1, 0, 1}, {0, 0, 1}, {1, 0, 0}, {-4, 1, -5},
          {-1, 0, -1}, {-3, 1, -3}, {0, 1, 0}, {-5, 2, -6}, {-4, 2, -5}, {-3, 2, -4}, {-2, 2, -3}, {-1, 2, -2}},
         {{-1, 0, 1}, {-1, 0, 0}, {0, 1, -1}, {2, 3, -1}, {2, 2, -1}, {1, -1, -1}, {0, -1, -1}, {0, 0, -1},
          {1, 2, -1}}},
        {"U10",
         {{1, -1, 0}, {-3, 0, -2}, {-5, 1, -3}, {1, 1, 0}, {5, -1, 2}, {3, -1, 2}, {0, 0, 1}, {-2, 1, 0}, {3, -1, 1},
          {2, -1, 1}, {3, 0, 1}, {4, -1, 2}, {-2, 0, -1}, {-1, 0, 0}, {-4, 1, -2}, {-3, 1, -1}, {-1, 1, 0}, {0, 1, 0},
          {-3, 1, -2}, {-1, 1, -1}},
         {{-1, 0, 2}, {0, 1, 0}, {1, 2, -1}, {1, 1, -1}, {0, -1, 0}, {0, -1, -1}}},
        {"Q17_Z20",
         {{0, 1, 0}, {-1, 0, 0}, {-3, -8, -6}, {4, -1, 1}, {2, 1, 1}, {0, 1, 1}, {3, 0, 1}, {1, 1, 1}, {2, 0, 1},
          {-2, -4, -3}, {-1, -2, -2}, {-2, -5, -4}, {-2, -7, -5}, {-1, -6, -4}, {0, -5, -3}, {1, -4, -2}, {2, -3, -1},
          {3, -2, 0}},
         {{-1, -1, 2}, {0, -1, 0}, {1, -1, 0}, {1, -1, 1}, {1, 2, -3}, {0, 0, -1}, {1, 0, -1}, {1, 1, -2}}},
        {"W10",
         {{1, -1, 0}, {-5, 1, -6}, {1, 1, 0}, {1, 1, 4}, {-1, 1, 2}, {1, 0, 0}, {1, 0, 2}, {0, 0, 1}, {-2, 0, -3},
          {0, 1, 3}, {-4, 1, -4}, {-3, 1, -2}, {-2, 1, 0}, {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {-4, 1, -5},
          {-3, 1, -4}, {-2, 1, -3}, {-1, 1, -2}, {0, 1, -1}},
         {{-1, 0, 1}, {-1, 0, 0}, {1, 2, -1}, {2, 3, -1}, {0, -1, 0}}},
    };
    return data;
}

std::array<std::size_t, 3> drop(std::size_t a, std::size_t b, std::size_t c) { return {a - 1, b - 1, c - 1}; }

SideExpectation side(long rho, std::optional<std::string> picard, std::optional<long> det,
                     std::optional<SignaturePair> sig, std::optional<long> la, std::optional<long> neg_gap,
                     std::optional<long> rank_gap) {
    SideExpectation s;
    s.rho = rho;
    s.picard = std::move(picard);
    if (det) s.det = Integer(*det);
    s.signature = sig;
    s.discriminant_length = la;
    s.negative_gap = neg_gap;
    s.rank_gap = rank_gap;
    return s;
}

std::vector<CaseDefinition> build_cases() {
    const auto& printed = printed_rays();
    std::vector<CaseDefinition> out;

    auto base = [&](std::size_t i, std::string b, std::string b2) {
        CaseDefinition c;
        c.name = printed[i].case_name;
        c.singularity = std::move(b);
        c.dual_singularity = std::move(b2);
        c.delta = {c.name + " delta", printed[i].delta};
        c.delta_prime = {c.name + " delta_prime", printed[i].delta_prime};
        c.delta_config.ordering = printed[i].delta;
        c.delta_prime_config.ordering = printed[i].delta_prime;
        return c;
    };

    {
        CaseDefinition c = base(0, "Z_{1,0}", "Z_{1,0}");
        c.delta_config.dropped = drop(1, 7, 10);
        c.delta_prime_config.dropped = drop(1, 5, 6);
        c.expected.abs_discriminant = 8;
        c.expected.invariant_factors = std::vector<Integer>{2, 4};
        c.expected.delta = side(14, "U+D5+E7", -8, SignaturePair{1, 13}, 2, 7, 9);
        c.expected.delta.alternative_picard = {"U+E6+E8"};
        c.expected.delta.split_u = true;
        c.expected.delta_prime = side(6, "U+A1+A3", -8, std::nullopt, std::nullopt, std::nullopt, std::nullopt);
        c.expected.delta_prime.basis_changes.push_back(
            {IntMatrix{{2, 5, 1, 2, 4, 2},
                       {2, 5, 1, 2, 3, 2},
                       {3, 7, 1, 3, 5, 2},
                       {-1, -4, -1, -2, -3, -2},
                       {-1, -2, -1, 0, -1, -1},
                       {2, 6, 1, 2, 4, 3}},
             "U+A1+A3"});
        out.push_back(std::move(c));
    }
    {
        CaseDefinition c = base(1, "U_{1,0}", "U_{1,0}");
        c.delta_config.dropped = drop(1, 7, 10);
        c.delta_prime_config.dropped = drop(1, 5, 6);
        c.expected.abs_discriminant = 18;
        c.expected.invariant_factors = std::vector<Integer>{18};
        c.expected.delta = side(17, std::nullopt, 18, SignaturePair{1, 16}, 2, 3, 5);
        c.expected.delta.split_u = true;
        c.expected.delta.complement_rank = 15;
        c.expected.delta.complement_det = -18;
        c.expected.delta_prime = side(3, "[[0,3],[3,-2]]+A1", 18, SignaturePair{1, 2}, 2, 17, 19);
        c.expected.delta_prime.basis_changes.push_back({IntMatrix{{1, 1, 0}, {0, 0, 1}, {-1, 0, 0}}, "[[0,3],[3,-2]]+A1"});
        out.push_back(std::move(c));
    }
    {
        CaseDefinition c = base(2, "Q_{17}", "Z_{2,0}");
        c.delta_config.dropped = drop(1, 2, 6);
        c.delta_prime_config.dropped = drop(1, 4, 5);
        c.expected.abs_discriminant = 6;
        c.expected.invariant_factors = std::vector<Integer>{6};
        c.expected.delta = side(15, "U+E6+E7", 6, SignaturePair{1, 14}, 1, 5, 7);
        c.expected.delta.split_u = true;
        c.expected.delta_prime = side(5, "U+A1+A2", 6, std::nullopt, std::nullopt, std::nullopt, std::nullopt);
        c.expected.delta_prime.basis_changes.push_back({IntMatrix{{1, 0, 1, 0, 0},
                                                                  {1, 1, 1, 0, 0},
                                                                  {0, 0, -1, 0, 0},
                                                                  {-1, 0, -1, 1, 0},
                                                                  {0, 0, 0, 0, 1}},
                                                        "U+A1+A2"});
        out.push_back(std::move(c));
    }
    {
        CaseDefinition c = base(3, "W_{1,0}", "W_{1,0}");
        c.delta_config.dropped = drop(4, 7, 10);
        c.delta_prime_config.dropped = drop(1, 4, 5);
        c.expected.abs_discriminant = 4;
        c.expected.invariant_factors = std::vector<Integer>{2, 2};
        c.expected.delta = side(18, std::nullopt, -4, SignaturePair{1, 17}, 2, 2, 4);
        c.expected.delta.split_u = true;
        c.expected.delta.complement_rank = 16;
        c.expected.delta.complement_det = 4;
        c.expected.delta_prime = side(2, "[[0,2],[2,-2]]", -4, SignaturePair{1, 1}, 2, 18, 20);
        c.notes.push_back({5, "printed basis text drops rays 1,7,10 of delta; the printed matrix corresponds to "
                              "dropping 4,7,10, which is used here"});
        out.push_back(std::move(c));
    }

    for (auto& c : out) {
        for (auto* inp : {&c.delta, &c.delta_prime}) {
            const Polytope3 hull = convex_hull(inp->points);
            RaySet rays = picard_rays(hull);
            Pts got = rays.points();
            Pts want = inp->points;
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got != want)
                throw Error(ErrorCode::InvalidOrdering, "builtin case " + c.name + ": rays of " + inp->name +
                                                            " do not reproduce the printed list");
            inp->points = hull.vertices();
        }
    }
    return out;
}

std::optional<std::array<std::size_t, 3>> dropped_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::ParseError, where + ": expected three indices");
    std::array<std::size_t, 3> d{};
    for (std::size_t i = 0; i < 3; ++i) {
        Integer v = integer_from_json(j[i], where);
        if (v < 1) throw Error(ErrorCode::ParseError, where + ": indices are 1-based");
        d[i] = v.get_ui() - 1;
    }
    return d;
}

Json dropped_to_json(const std::array<std::size_t, 3>& d) { return Json::array({d[0] + 1, d[1] + 1, d[2] + 1}); }

template <class T>
std::optional<T> opt_long(const Json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<T>();
}

SideExpectation side_from_json(const Json& j, const std::string& where) {
    SideExpectation s;
    if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": expected an object");
    s.rho = opt_long<long>(j, "rho");
    if (j.contains("picard")) s.picard = j["picard"].get<std::string>();
    if (j.contains("alternative_picard")) s.alternative_picard = j["alternative_picard"].get<std::vector<std::string>>();
    if (j.contains("det")) s.det = integer_from_json(j["det"], where + ".det");
    if (j.contains("signature")) {
        const Json& sg = j["signature"];
        if (!sg.is_array() || sg.size() != 2) throw Error(ErrorCode::ParseError, where + ".signature: expected [t+, t-]");
        s.signature = SignaturePair{sg[0].get<long>(), sg[1].get<long>()};
    }
    s.discriminant_length = opt_long<long>(j, "discriminant_length");
    s.negative_gap = opt_long<long>(j, "negative_gap");
    s.rank_gap = opt_long<long>(j, "rank_gap");
    s.split_u = j.value("split_u", false);
    if (j.contains("complement")) {
        const Json& c = j["complement"];
        s.complement_rank = opt_long<long>(c, "rank");
        if (c.contains("det")) s.complement_det = integer_from_json(c["det"], where + ".complement.det");
    }
    if (j.contains("basis_changes")) {
        for (const auto& b : j["basis_changes"]) {
            s.basis_changes.push_back({matrix_from_json(require(b, "rows", where), where + ".basis_changes.rows"),
                                       require(b, "target", where).get<std::string>()});
        }
    }
    return s;
}

Json side_to_json(const SideExpectation& s) {
    Json j = Json::object();
    if (s.rho) j["rho"] = *s.rho;
    if (s.picard) j["picard"] = *s.picard;
    if (!s.alternative_picard.empty()) j["alternative_picard"] = s.alternative_picard;
    if (s.det) j["det"] = integer_to_json(*s.det);
    if (s.signature) j["signature"] = {s.signature->positive, s.signature->negative};
    if (s.discriminant_length) j["discriminant_length"] = *s.discriminant_length;
    if (s.negative_gap) j["negative_gap"] = *s.negative_gap;
    if (s.rank_gap) j["rank_gap"] = *s.rank_gap;
    if (s.split_u) j["split_u"] = true;
    if (s.complement_rank || s.complement_det) {
        Json c = Json::object();
        if (s.complement_rank) c["rank"] = *s.complement_rank;
        if (s.complement_det) c["det"] = integer_to_json(*s.complement_det);
        j["complement"] = c;
    }
    if (!s.basis_changes.empty()) {
        Json arr = Json::array();
        for (const auto& b : s.basis_changes) arr.push_back({{"rows", matrix_to_json(b.rows)}, {"target", b.target}});
        j["basis_changes"] = arr;
    }
    return j;
}

}  // namespace

const std::vector<PrintedRays>& printed_rays() { return make_printed(); }

const std::vector<CaseDefinition>& builtin_cases() {
    static const std::vector<CaseDefinition> cases = build_cases();
    return cases;
}

std::optional<CaseDefinition> builtin_case(const std::string& name) {
    for (const auto& c : builtin_cases())
        if (c.name == name) return c;
    return std::nullopt;
}

CaseDefinition case_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, where + ": case must be an object");
    CaseDefinition c;
    c.name = require(j, "name", where).get<std::string>();
    c.singularity = j.value("singularity", std::string{});
    c.dual_singularity = j.value("dual_singularity", std::string{});
    c.delta = polytope_input_from_json(require(j, "delta", where), where + ".delta");
    c.delta_prime = polytope_input_from_json(require(j, "delta_prime", where), where + ".delta_prime");
    if (j.contains("dropped")) {
        const Json& d = j["dropped"];
        if (d.contains("delta")) c.delta_config.dropped = dropped_from_json(d["delta"], where + ".dropped.delta");
        if (d.contains("delta_prime"))
            c.delta_prime_config.dropped = dropped_from_json(d["delta_prime"], where + ".dropped.delta_prime");
    }
    if (j.contains("ordering")) {
        const Json& o = j["ordering"];
        if (o.contains("delta")) c.delta_config.ordering = points_from_json(o["delta"], where + ".ordering.delta");
        if (o.contains("delta_prime"))
            c.delta_prime_config.ordering = points_from_json(o["delta_prime"], where + ".ordering.delta_prime");
    }
    if (j.contains("expected")) {
        const Json& e = j["expected"];
        if (e.contains("abs_discriminant"))
            c.expected.abs_discriminant = integer_from_json(e["abs_discriminant"], where + ".expected.abs_discriminant");
        if (e.contains("invariant_factors"))
            c.expected.invariant_factors = vector_from_json(e["invariant_factors"], where + ".expected.invariant_factors");
        if (e.contains("delta")) c.expected.delta = side_from_json(e["delta"], where + ".expected.delta");
        if (e.contains("delta_prime"))
            c.expected.delta_prime = side_from_json(e["delta_prime"], where + ".expected.delta_prime");
    }
    if (j.contains("notes")) {
        for (const auto& n : j["notes"]) c.notes.push_back({n.value("step", 0), n.value("text", std::string{})});
    }
    return c;
}

Json case_to_json(const CaseDefinition& c) {
    Json j;
    j["name"] = c.name;
    if (!c.singularity.empty()) j["singularity"] = c.singularity;
    if (!c.dual_singularity.empty()) j["dual_singularity"] = c.dual_singularity;
    j["delta"] = {{"name", c.delta.name}, {"vertices", points_to_json(c.delta.points)}};
    j["delta_prime"] = {{"name", c.delta_prime.name}, {"vertices", points_to_json(c.delta_prime.points)}};
    Json dropped = Json::object(), ordering = Json::object();
    if (c.delta_config.dropped) dropped["delta"] = dropped_to_json(*c.delta_config.dropped);
    if (c.delta_prime_config.dropped) dropped["delta_prime"] = dropped_to_json(*c.delta_prime_config.dropped);
    if (c.delta_config.ordering) ordering["delta"] = points_to_json(*c.delta_config.ordering);
    if (c.delta_prime_config.ordering) ordering["delta_prime"] = points_to_json(*c.delta_prime_config.ordering);
    if (!dropped.empty()) j["dropped"] = dropped;
    if (!ordering.empty()) j["ordering"] = ordering;
    Json e = Json::object();
    if (c.expected.abs_discriminant) e["abs_discriminant"] = integer_to_json(*c.expected.abs_discriminant);
    if (c.expected.invariant_factors) e["invariant_factors"] = vector_to_json(*c.expected.invariant_factors);
    Json d = side_to_json(c.expected.delta), dp = side_to_json(c.expected.delta_prime);
    if (!d.empty()) e["delta"] = d;
    if (!dp.empty()) e["delta_prime"] = dp;
    if (!e.empty()) j["expected"] = e;
    if (!c.notes.empty()) {
        Json arr = Json::array();
        for (const auto& n : c.notes) arr.push_back({{"step", n.step}, {"text", n.text}});
        j["notes"] = arr;
    }
    return j;
}

const WorkedExample& worked_example() {
    static const WorkedExample ex = [] {
        auto mono = [](const char* name, long a, long b, long c, long d, LatticeVector v) {
            return MonomialCheck{name, {Integer(a), Integer(b), Integer(c), Integer(d)}, std::move(v)};
        };
        return WorkedExample{
            {{-1, -1, 2}, {0, -1, 0}, {1, -1, 0}, {1, -1, 1}, {1, 2, -3}, {0, 0, -1}},
            {{-1, 2, -1}, {-1, -1, 1}, {-1, -1, -1}, {6, -1, -1}, {2, 1, -1}, {0, -1, 1}},
            {{-1, -3, -4}, {0, -2, -3}, {0, 1, 0}, {1, 0, 0}, {0, 0, 1}, {-1, -2, -3}},
            IntMatrix{{1, 1, 1}, {1, 3, 4}, {1, 2, 3}},
            WeightSystem({1, 1, 3, 5}, {IntVector{-3, 3, 0, 0}, IntVector{-8, 0, 1, 1}, IntVector{-6, 1, 0, 1}}),
            WeightSystem({1, 1, 2, 3}, {IntVector{-1, 1, 0, 0}, IntVector{-2, 0, 1, 0}, IntVector{-3, 0, 0, 1}}),
            {mono("W^7Y", 7, 0, 1, 0, {0, 0, -1}), mono("X^5Z", 0, 5, 0, 1, {1, -1, 1}),
             mono("XY^3", 0, 1, 3, 0, {1, 2, -3}), mono("Z^2", 0, 0, 0, 2, {-1, -1, 2})},
            {mono("W^7", 7, 0, 0, 0, {-1, -1, -1}), mono("X^5Y", 0, 5, 1, 0, {4, 0, -1}),
             mono("WY^3", 1, 0, 3, 0, {-1, 2, -1}), mono("XZ^2", 0, 1, 0, 2, {0, -1, 1})},
        };
    }();
    return ex;
}

}  // namespace k3dual
