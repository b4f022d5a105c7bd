#include "k3dual/cli.hpp"

#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "k3dual/dataset.hpp"
#include "k3dual/discriminant.hpp"
#include "k3dual/error.hpp"
#include "k3dual/json_io.hpp"
#include "k3dual/lattice_expr.hpp"
#include "k3dual/pipeline.hpp"
#include "k3dual/search.hpp"

namespace k3dual::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Polytope3 load_polytope(const std::string& path) {
    PolytopeInput in = polytope_input_from_json(read_json_file(path), path);
    return convex_hull(in.points);
}

// A file holding a Gram JSON, or a lattice expression.
GramLattice load_lattice(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return gram_from_json(read_json_file(arg), arg);
    return parse_lattice_expression(arg, std::filesystem::current_path().string());
}

std::array<std::size_t, 3> parse_drop(const std::string& s) {
    std::array<std::size_t, 3> d{};
    std::stringstream ss(s);
    std::string item;
    std::size_t n = 0;
    while (std::getline(ss, item, ',')) {
        if (n == 3) throw InputError("--drop takes exactly three indices");
        try {
            std::size_t pos = 0;
            long v = std::stol(item, &pos);
            if (pos != item.size() || v < 1) throw InputError("");
            d[n++] = static_cast<std::size_t>(v - 1);
        } catch (const std::exception&) {
            throw InputError("--drop expects 1-based indices i,j,k, got '" + s + "'");
        }
    }
    if (n != 3) throw InputError("--drop takes exactly three indices");
    return d;
}

// Ray ordering given inline as JSON or as a file with a list of points.
std::vector<LatticeVector> parse_order(const std::string& s) {
    if (std::filesystem::is_regular_file(s)) {
        Json j = read_json_file(s);
        if (j.is_object()) j = require(j, "ordering", s);
        return points_from_json(j, s);
    }
    return points_from_json(parse_json_text(s, "--order"), "--order");
}

Json lattice_info_json(const GramLattice& l) {
    Json j;
    j["label"] = l.label();
    j["rank"] = l.rank();
    j["even"] = l.is_even();
    j["det"] = integer_to_json(determinant(l));
    j["gram"] = matrix_to_json(l.gram());
    if (determinant(l) != 0) {
        SignaturePair s = signature(l);
        j["signature"] = {s.positive, s.negative};
    }
    std::vector<Integer> f = invariant_factors(l);
    j["invariant_factors"] = vector_to_json(f);
    if (l.is_even() && determinant(l) != 0) {
        FiniteQuadraticForm q = discriminant_form(l);
        Json qs = Json::array(), gens = Json::array();
        for (const auto& v : q.q_values) qs.push_back(to_string(v));
        for (const auto& g : q.generators) gens.push_back(vector_to_json(g));
        j["discriminant_group"] = vector_to_json(q.invariant_factors);
        j["discriminant_length"] = min_generators(q);
        j["generators"] = gens;
        j["q_values"] = qs;
    }
    return j;
}

void add_limits(CLI::App* cmd, long& bound, double& seconds) {
    cmd->add_option("--bound", bound, "coordinate bound for lattice searches")->check(CLI::PositiveNumber);
    cmd->add_option("--seconds", seconds, "wall-clock limit per search")->check(CLI::PositiveNumber);
}

SearchLimits make_limits(long bound, double seconds) {
    SearchLimits l;
    l.bound = bound;
    l.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
    return l;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Picard lattices of toric K3 families and lattice duality checks", "k3dual"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string path, path2, drop, order;
    long bound = default_search_bound();
    double seconds = 20.0;
    bool relaxed = false;
    auto format_check = CLI::IsMember({"json", "text"});

    auto* dual = app.add_subcommand("dual", "polar dual of a polytope");
    dual->add_option("polytope", path, "polytope JSON")->required();

    auto* rays = app.add_subcommand("rays", "boundary points that are not facet-interior");
    rays->add_option("polytope", path, "polytope JSON")->required();
    rays->add_option("--order", order, "ray ordering as JSON list or file");

    auto* picard = app.add_subcommand("picard", "intersection matrix of the Picard lattice");
    picard->add_option("polytope", path, "polytope JSON")->required();
    picard->add_option("--drop", drop, "1-based indices of the three dropped rays, i,j,k");
    picard->add_option("--order", order, "ray ordering as JSON list or file");

    auto* lattice = app.add_subcommand("lattice", "lattice tools");
    lattice->require_subcommand(1);
    auto* info = lattice->add_subcommand("info", "rank, det, signature and discriminant form");
    info->add_option("lattice", path, "Gram JSON file or lattice expression")->required();
    auto* iso = lattice->add_subcommand("isometry", "bounded isometry search");
    iso->add_option("from", path, "Gram JSON file or lattice expression")->required();
    iso->add_option("to", path2, "Gram JSON file or lattice expression")->required();
    add_limits(iso, bound, seconds);
    auto* split = lattice->add_subcommand("split-u", "split off a hyperbolic plane");
    split->add_option("lattice", path, "Gram JSON file or lattice expression")->required();
    add_limits(split, bound, seconds);

    auto* verify = app.add_subcommand("verify-pair", "run every check on a polytope pair");
    verify->add_option("case", path, "case JSON file or builtin name")->required();
    verify->add_option("--format", format, "json or text")->check(format_check);
    verify->add_flag("--relaxed", relaxed, "use >= in the rank condition of the embedding criteria");
    add_limits(verify, bound, seconds);

    auto* dataset = app.add_subcommand("dataset", "builtin cases");
    dataset->require_subcommand(1);
    auto* list = dataset->add_subcommand("list", "names of the builtin cases");
    auto* show = dataset->add_subcommand("show", "case JSON of a builtin case");
    show->add_option("name", path, "builtin name")->required();

    auto* report = app.add_subcommand("report", "verify all builtin cases");
    report->add_option("--format", format, "json or text")->check(format_check);
    report->add_flag("--relaxed", relaxed, "use >= in the rank condition of the embedding criteria");
    add_limits(report, bound, seconds);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 2;
    }

    auto config = [&] {
        PipelineConfig c;
        c.limits.bound = bound;
        c.search_seconds = seconds;
        c.strict_nikulin = !relaxed;
        return c;
    };

    try {
        if (*dual) {
            Polytope3 p = load_polytope(path);
            try {
                out << polytope_to_json("dual", polar_dual(p)).dump(2) << "\n";
                return 0;
            } catch (const NonIntegralDualError& e) {
                Json verts = Json::array();
                for (const auto& v : e.vertices())
                    verts.push_back({rational_to_json(v.x), rational_to_json(v.y), rational_to_json(v.z)});
                out << Json{{"integral", false}, {"vertices", verts}}.dump(2) << "\n";
                err << "error: " << e.what() << "\n";
                return 1;
            }
        }
        if (*rays) {
            Polytope3 p = load_polytope(path);
            std::optional<std::vector<LatticeVector>> ord;
            if (!order.empty()) ord = parse_order(order);
            RaySet rs = picard_rays(p, ord);
            Json arr = Json::array();
            for (const auto& r : rs.rays) arr.push_back({{"point", point_to_json(r.point)}, {"kind", ray_kind_name(r.kind)}});
            out << Json{{"rays", arr}, {"picard_number", picard_number(p)}, {"rk_l0", rk_l0(p)}}.dump(2) << "\n";
            return 0;
        }
        if (*picard) {
            Polytope3 p = load_polytope(path);
            std::optional<std::vector<LatticeVector>> ord;
            if (!order.empty()) ord = parse_order(order);
            std::optional<std::array<std::size_t, 3>> d;
            if (!drop.empty()) d = parse_drop(drop);
            RaySet rs = picard_rays(p, ord);
            PicardBasis b = select_basis(rs, d);
            GramLattice g = intersection_matrix(p, rs, b);
            Json kept = Json::array(), dropped = Json::array();
            for (auto i : b.kept) kept.push_back(i + 1);
            for (auto i : b.dropped) dropped.push_back(i + 1);
            out << Json{{"basis_rays", kept}, {"dropped", dropped}, {"gram", matrix_to_json(g.gram())}}.dump() << "\n";
            return 0;
        }
        if (*info) {
            out << lattice_info_json(load_lattice(path)).dump(2) << "\n";
            return 0;
        }
        if (*iso) {
            GramLattice a = load_lattice(path), b = load_lattice(path2);
            IsometryResult r = find_isometry(a, b, make_limits(bound, seconds));
            Json j{{"status", search_status_name(r.status)}, {"bound", bound}, {"detail", r.detail}};
            j["witness"] = r.witness ? matrix_to_json(*r.witness) : Json(nullptr);
            out << j.dump(2) << "\n";
            return r.status == SearchStatus::Found ? 0 : 1;
        }
        if (*split) {
            GramLattice l = load_lattice(path);
            HyperbolicPlaneResult r = find_hyperbolic_plane(l, make_limits(bound, seconds));
            Json j{{"status", search_status_name(r.status)}, {"bound", bound}, {"detail", r.detail}};
            if (r.plane) {
                const GramLattice& k = r.plane->complement.lattice;
                j["e"] = vector_to_json(r.plane->e);
                j["f"] = vector_to_json(r.plane->f);
                j["complement"] = {{"rank", k.rank()},
                                   {"det", integer_to_json(determinant(k))},
                                   {"basis", matrix_to_json(r.plane->complement.basis)},
                                   {"gram", matrix_to_json(k.gram())}};
            }
            out << j.dump(2) << "\n";
            return r.plane ? 0 : 1;
        }
        if (*verify) {
            CaseDefinition c;
            if (auto b = builtin_case(path)) {
                c = *b;
            } else if (std::filesystem::is_regular_file(path)) {
                c = case_from_json(read_json_file(path), path);
            } else {
                throw InputError("'" + path + "' is neither a builtin case nor a file");
            }
            DualityReport r = verify_pair(c, config());
            if (format == "text")
                out << table_text({r}) << "\n" << report_text(r);
            else
                out << report_to_json(r).dump(2) << "\n";
            return r.passed ? 0 : 1;
        }
        if (*list) {
            for (const auto& c : builtin_cases()) out << c.name << "\n";
            return 0;
        }
        if (*show) {
            auto c = builtin_case(path);
            if (!c) throw InputError("unknown builtin case '" + path + "'");
            out << case_to_json(*c).dump(2) << "\n";
            return 0;
        }
        if (*report) {
            std::vector<DualityReport> rs = verify_pairs(builtin_cases(), config());
            bool ok = true;
            for (const auto& r : rs) ok = ok && r.passed;
            if (format == "text") {
                out << table_text(rs);
                for (const auto& r : rs) out << "\n" << report_text(r);
            } else {
                out << reports_to_json(rs).dump(2) << "\n";
            }
            return ok ? 0 : 1;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace k3dual::cli
