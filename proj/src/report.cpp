#include "k3dual/pipeline.hpp"

#include <iomanip>
#include <sstream>

#include "k3dual/equivalence.hpp"
#include "k3dual/error.hpp"

namespace k3dual {

namespace {

const char* kVerdictBasis =
    "lattice duality follows from the orthogonality criterion on discriminant forms together with the "
    "embedding criteria; the orthogonal complement inside the K3 lattice is not constructed";

Json indices_to_json(const std::vector<std::size_t>& idx) {
    Json a = Json::array();
    for (std::size_t i : idx) a.push_back(i + 1);
    return a;
}

Json opt_matrix(const std::optional<IntMatrix>& m) { return m ? matrix_to_json(*m) : Json(nullptr); }

Json signature_to_json(const SignaturePair& s) { return Json::array({s.positive, s.negative}); }

Json form_to_json(const FiniteQuadraticForm& f) {
    Json j;
    j["invariant_factors"] = vector_to_json(f.invariant_factors);
    Json gens = Json::array(), q = Json::array(), b = Json::array();
    for (const auto& g : f.generators) gens.push_back(vector_to_json(g));
    for (const auto& v : f.q_values) q.push_back(to_string(v));
    for (const auto& row : f.bilinear) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        b.push_back(r);
    }
    j["generators"] = gens;
    j["q_values"] = q;
    j["bilinear"] = b;
    return j;
}

Json form_iso_to_json(const std::optional<FormIsomorphism>& f) {
    if (!f) return nullptr;
    Json imgs = Json::array();
    for (const auto& v : f->images) imgs.push_back(vector_to_json(v));
    return {{"sign", f->sign}, {"images", imgs}};
}

std::optional<FormIsomorphism> form_iso_from_json(const Json& j, const std::string& where) {
    if (j.is_null()) return std::nullopt;
    FormIsomorphism f;
    f.sign = require(j, "sign", where).get<int>();
    for (const auto& v : require(j, "images", where)) f.images.push_back(vector_from_json(v, where + ".images"));
    return f;
}

Json nikulin_to_json(const NikulinReport& n) {
    return {{"ambient", signature_to_json(n.ambient)},
            {"signature", signature_to_json(n.lattice)},
            {"rank", n.rank},
            {"ambient_rank", n.ambient_rank},
            {"discriminant_length", n.discriminant_length},
            {"signature_difference", n.signature_difference},
            {"positive_gap", n.positive_gap},
            {"negative_gap", n.negative_gap},
            {"rank_gap", n.rank_gap},
            {"strict", n.strict},
            {"condition1", n.condition1},
            {"condition2", n.condition2},
            {"condition3", n.condition3},
            {"passed", n.passed()}};
}

Json side_to_json(const SideReport& s) {
    Json j;
    j["polytope"] = s.polytope;
    j["vertices"] = points_to_json(s.vertices);
    j["reflexive"] = s.reflexive;
    j["rk_l0"] = s.rk_l0;
    if (s.counts) {
        j["picard_number"] = s.counts->from_rays;
        j["counts"] = {{"from_rays", s.counts->from_rays},
                       {"from_points", s.counts->from_points},
                       {"rk_l0", s.counts->rk_l0}};
    }
    if (!s.rays.empty()) j["rays"] = points_to_json(s.rays);
    if (s.basis) {
        j["dropped"] = indices_to_json({s.basis->dropped.begin(), s.basis->dropped.end()});
        j["basis_rays"] = indices_to_json(s.basis->kept);
    }
    if (s.gram) j["gram"] = matrix_to_json(s.gram->gram());
    if (s.signature) {
        j["det"] = integer_to_json(s.det);
        j["signature"] = signature_to_json(*s.signature);
    }
    if (s.form) j["discriminant_form"] = form_to_json(*s.form);
    if (s.nikulin) j["nikulin"] = nikulin_to_json(*s.nikulin);
    Json checks = Json::array();
    for (const auto& lc : s.lattice_checks) {
        checks.push_back({{"target", lc.target},
                          {"target_gram", matrix_to_json(lc.target_lattice.gram())},
                          {"rows", opt_matrix(lc.rows)},
                          {"source_gram", matrix_to_json(lc.source.gram())},
                          {"status", search_status_name(lc.status)},
                          {"witness", opt_matrix(lc.witness)},
                          {"genus_match", lc.genus_match},
                          {"form_witness", form_iso_to_json(lc.form_witness)},
                          {"detail", lc.detail}});
    }
    if (!checks.empty()) j["lattice_checks"] = checks;
    if (s.split) {
        Json sp;
        sp["status"] = search_status_name(s.split->status);
        sp["detail"] = s.split->detail;
        if (s.split->plane) {
            const HyperbolicPlane& p = *s.split->plane;
            sp["e"] = vector_to_json(p.e);
            sp["f"] = vector_to_json(p.f);
            sp["complement_rank"] = p.complement.lattice.rank();
            sp["complement_det"] = integer_to_json(s.split->complement_det);
            if (s.split->complement_signature)
                sp["complement_signature"] = signature_to_json(*s.split->complement_signature);
            sp["complement_basis"] = matrix_to_json(p.complement.basis);
            sp["complement_gram"] = matrix_to_json(p.complement.lattice.gram());
        }
        j["split"] = sp;
    }
    return j;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

// Picard lattice as displayed in the table.
std::string picard_label(const SideReport& s) {
    for (const auto& lc : s.lattice_checks)
        if (!lc.rows && lc.status == SearchStatus::Found) return lc.target;
    for (const auto& lc : s.lattice_checks)
        if (lc.rows && lc.status == SearchStatus::Found) return lc.target;
    if (s.split && s.split->plane)
        return "U+K(" + std::to_string(s.split->plane->complement.lattice.rank()) + "," +
               to_string(s.split->complement_det) + ")";
    if (s.gram) return "rank " + std::to_string(s.gram->rank()) + ", det " + to_string(s.det);
    return "-";
}

}  // namespace

Json report_to_json(const DualityReport& r) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["case"] = r.case_name;
    j["singularity"] = r.singularity;
    j["dual_singularity"] = r.dual_singularity;
    j["config"] = {{"search_bound", r.search_bound},
                   {"strict_nikulin", r.strict_nikulin},
                   {"ambient", signature_to_json(r.ambient)}};
    j["verdict"] = r.passed ? "PASS" : "FAIL";
    j["verdict_basis"] = kVerdictBasis;
    Json steps = Json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"step", s.number}, {"name", s.name}, {"status", step_status_name(s.status)}, {"detail", s.detail}});
    j["steps"] = steps;
    j["delta"] = side_to_json(r.delta);
    j["delta_prime"] = side_to_json(r.delta_prime);
    j["equivalence"] = opt_matrix(r.equivalence);
    j["rho_sum"] = r.rho_sum ? Json(*r.rho_sum) : Json(nullptr);
    if (r.orthogonality) {
        const auto& o = *r.orthogonality;
        j["orthogonality"] = {{"det_sum", integer_to_json(o.det_sum)},
                              {"det_prime", integer_to_json(o.det_prime)},
                              {"determinants_opposite", o.determinants_opposite},
                              {"shortcut_agrees", o.shortcut_agrees},
                              {"witness", form_iso_to_json(o.witness)}};
    } else {
        j["orthogonality"] = nullptr;
    }
    Json notes = Json::array();
    for (const auto& n : r.notes)
        notes.push_back({{"step", n.step}, {"level", note_level_name(n.level)}, {"side", n.side}, {"text", n.text}});
    j["notes"] = notes;
    return j;
}

Json reports_to_json(const std::vector<DualityReport>& reports) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return {{"schema_version", kReportSchemaVersion}, {"reports", arr}};
}

std::string table_text(const std::vector<DualityReport>& reports) {
    std::vector<std::vector<std::string>> rows = {
        {"B", "Pic(delta)", "rho", "|discr|", "rho'", "Pic(delta')", "B'", "verdict"}};
    for (const auto& r : reports) {
        auto rho = [](const SideReport& s) { return s.counts ? std::to_string(s.counts->from_rays) : "-"; };
        std::string discr = r.delta.signature ? to_string(Integer(abs(r.delta.det))) : "-";
        std::string verdict = r.passed ? "PASS" : "FAIL";
        if (r.passed && r.warnings() > 0) verdict += " (" + std::to_string(r.warnings()) + " warn)";
        rows.push_back({r.singularity.empty() ? r.case_name : r.singularity, picard_label(r.delta), rho(r.delta), discr,
                        rho(r.delta_prime), picard_label(r.delta_prime),
                        r.dual_singularity.empty() ? r.case_name : r.dual_singularity, verdict});
    }
    std::vector<std::size_t> width(rows[0].size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    std::ostringstream out;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::string line;
        for (std::size_t i = 0; i < rows[k].size(); ++i)
            line += (i ? " | " : "") + (i + 1 < rows[k].size() ? pad(rows[k][i], width[i]) : rows[k][i]);
        out << line << "\n";
        if (k == 0) {
            std::size_t total = 0;
            for (std::size_t w : width) total += w + 3;
            out << std::string(total - 3, '-') << "\n";
        }
    }
    return out.str();
}

std::string report_text(const DualityReport& r) {
    std::ostringstream out;
    out << "case " << r.case_name;
    if (!r.singularity.empty()) out << " (" << r.singularity << ", " << r.dual_singularity << ")";
    out << "\n";
    for (const auto& s : r.steps)
        out << "  [" << step_status_name(s.status) << "] " << std::setw(2) << s.number << " " << s.name << ": "
            << s.detail << "\n";
    for (const auto& n : r.notes) {
        out << "  " << note_level_name(n.level) << " step " << n.step;
        if (!n.side.empty()) out << " (" << n.side << ")";
        out << ": " << n.text << "\n";
    }
    out << "  verdict: " << (r.passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

ReverifyResult reverify_report(const Json& j) {
    ReverifyResult res;
    auto fail = [&](std::string msg) {
        res.witnesses_ok = false;
        res.failures.push_back(std::move(msg));
    };
    const std::string where = "report " + j.value("case", std::string("?"));
    try {
        if (j.value("schema_version", 0) != kReportSchemaVersion) fail("unsupported schema version");
        const Json& jd = require(j, "delta", where);
        const Json& jp = require(j, "delta_prime", where);
        Polytope3 delta = convex_hull(points_from_json(require(jd, "vertices", where), where + ".delta.vertices"));
        Polytope3 delta_prime =
            convex_hull(points_from_json(require(jp, "vertices", where), where + ".delta_prime.vertices"));

        if (!j["equivalence"].is_null()) {
            IntMatrix t = matrix_from_json(j["equivalence"], where + ".equivalence");
            if (!is_equivalence_witness(polar_dual(delta), delta_prime, t)) fail("equivalence witness does not map the dual onto delta_prime");
        }

        std::optional<GramLattice> grams[2];
        const Json* sides[2] = {&jd, &jp};
        const Polytope3* polys[2] = {&delta, &delta_prime};
        for (int k = 0; k < 2; ++k) {
            const Json& s = *sides[k];
            const std::string sw = where + (k ? ".delta_prime" : ".delta");
            if (!s.contains("gram")) continue;
            grams[k] = GramLattice(matrix_from_json(s["gram"], sw + ".gram"));
            // The stored matrix must follow from the stored rays and dropped set.
            RaySet rays = picard_rays(*polys[k], points_from_json(require(s, "rays", sw), sw + ".rays"));
            std::array<std::size_t, 3> dropped{};
            const Json& jdrop = require(s, "dropped", sw);
            for (std::size_t i = 0; i < 3; ++i) dropped[i] = jdrop.at(i).get<std::size_t>() - 1;
            if (!(intersection_matrix(*polys[k], rays, select_basis(rays, dropped)).gram() == grams[k]->gram()))
                fail(sw + ": gram does not follow from the rays");

            if (s.contains("lattice_checks")) {
                for (const auto& lc : s["lattice_checks"]) {
                    GramLattice source(matrix_from_json(lc["source_gram"], sw + ".source_gram"));
                    GramLattice target(matrix_from_json(lc["target_gram"], sw + ".target_gram"));
                    if (!lc["rows"].is_null()) {
                        IntMatrix rows = matrix_from_json(lc["rows"], sw + ".rows");
                        if (!(apply_basis_change(*grams[k], rows).gram() == source.gram()))
                            fail(sw + ": basis change for " + lc["target"].get<std::string>() + " does not reproduce its gram");
                    } else if (!(source.gram() == grams[k]->gram())) {
                        fail(sw + ": lattice check source differs from the gram");
                    }
                    if (!lc["witness"].is_null()) {
                        IntMatrix w = matrix_from_json(lc["witness"], sw + ".witness");
                        if (!is_isometry_witness(source, target, w))
                            fail(sw + ": isometry witness for " + lc["target"].get<std::string>() + " is invalid");
                    }
                    if (auto fw = form_iso_from_json(lc["form_witness"], sw + ".form_witness")) {
                        if (!verify_form_isomorphism(discriminant_form(source), discriminant_form(target), *fw))
                            fail(sw + ": discriminant form witness is invalid");
                    }
                }
            }
            if (s.contains("split") && s["split"].contains("e")) {
                const Json& sp = s["split"];
                HyperbolicPlane p{vector_from_json(sp["e"], sw + ".e"), vector_from_json(sp["f"], sw + ".f"),
                                  {matrix_from_json(sp["complement_basis"], sw + ".complement_basis"),
                                   GramLattice(matrix_from_json(sp["complement_gram"], sw + ".complement_gram"))}};
                if (!is_hyperbolic_plane(*grams[k], p)) fail(sw + ": hyperbolic plane witness is invalid");
            }
        }

        const Json& o = j["orthogonality"];
        if (!o.is_null() && grams[0] && grams[1]) {
            if (auto w = form_iso_from_json(o["witness"], where + ".orthogonality.witness")) {
                FiniteQuadraticForm fs = discriminant_form(direct_sum(*grams[0], lattice_U()));
                if (w->sign != -1 || !verify_form_isomorphism(fs, discriminant_form(*grams[1]), *w))
                    fail("orthogonality witness is invalid");
            }
        }

        bool any_fail = false;
        for (const auto& s : require(j, "steps", where)) any_fail = any_fail || s.at("status") == "FAIL";
        std::string recomputed = (!any_fail && res.witnesses_ok) ? "PASS" : "FAIL";
        if (recomputed != j.value("verdict", std::string{})) {
            res.verdict_reproduced = false;
            res.failures.push_back("verdict " + j.value("verdict", std::string{}) + " not reproduced");
        }
    } catch (const std::exception& e) {
        fail(std::string("malformed report: ") + e.what());
        res.verdict_reproduced = false;
    }
    return res;
}

}  // namespace k3dual
