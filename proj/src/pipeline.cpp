#include "k3dual/pipeline.hpp"

#include <chrono>
#include <future>
#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "k3dual/equivalence.hpp"
#include "k3dual/error.hpp"
#include "k3dual/lattice_expr.hpp"

namespace k3dual {

const char* step_status_name(StepStatus s) {
    switch (s) {
        case StepStatus::Pass: return "PASS";
        case StepStatus::Warn: return "WARN";
        case StepStatus::Fail: return "FAIL";
        case StepStatus::Skipped: return "SKIP";
    }
    return "?";
}

const char* note_level_name(NoteLevel l) {
    switch (l) {
        case NoteLevel::Info: return "INFO";
        case NoteLevel::Warn: return "WARN";
        case NoteLevel::Fail: return "FAIL";
    }
    return "?";
}

const StepRecord* DualityReport::step(int number) const {
    for (const auto& s : steps)
        if (s.number == number) return &s;
    return nullptr;
}

std::size_t DualityReport::warnings() const {
    std::size_t n = 0;
    for (const auto& note : notes) n += note.level == NoteLevel::Warn;
    return n;
}

namespace {

struct Side {
    const char* key;
    const PolytopeInput* input;
    const SideConfig* config;
    const SideExpectation* expected;
    SideReport* report;
    std::optional<Polytope3> polytope;
    std::optional<RaySet> rays;
};

class Runner {
public:
    Runner(const CaseDefinition& c, const PipelineConfig& cfg) : case_(c), cfg_(cfg) {
        r_.case_name = c.name;
        r_.singularity = c.singularity;
        r_.dual_singularity = c.dual_singularity;
        r_.search_bound = cfg.limits.bound;
        r_.strict_nikulin = cfg.strict_nikulin;
        r_.ambient = cfg.ambient;
        sides_[0] = {"delta", &c.delta, &c.delta_config, &c.expected.delta, &r_.delta, {}, {}};
        sides_[1] = {"delta_prime", &c.delta_prime, &c.delta_prime_config, &c.expected.delta_prime, &r_.delta_prime,
                     {}, {}};
    }

    DualityReport run() {
        for (auto& s : sides_) {
            s.polytope = convex_hull(s.input->points);
            s.report->polytope = s.input->name;
            s.report->vertices = s.polytope->vertices();
        }
        step1();
        step2();
        step3();
        step4();
        step5();
        step6();
        step7();
        step8();
        step9();
        step10();
        for (const auto& n : case_.notes) note(n.step, NoteLevel::Warn, "", n.text);
        std::stable_sort(r_.notes.begin(), r_.notes.end(),
                         [](const ReportNote& a, const ReportNote& b) { return a.step < b.step; });
        r_.passed = true;
        for (const auto& s : r_.steps) r_.passed = r_.passed && s.status != StepStatus::Fail;
        return std::move(r_);
    }

private:
    void record(int n, const char* name, StepStatus st, std::string detail) {
        r_.steps.push_back({n, name, st, std::move(detail)});
    }
    void note(int step, NoteLevel level, std::string side, std::string text) {
        r_.notes.push_back({step, level, std::move(side), std::move(text)});
    }
    bool usable(int step) const {
        for (const auto& s : r_.steps)
            if (s.number <= step && s.status == StepStatus::Fail && blocking_.count(s.number)) return false;
        return true;
    }
    SearchLimits limits() const {
        SearchLimits l = cfg_.limits;
        l.deadline = std::chrono::steady_clock::now() +
                     std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(cfg_.search_seconds));
        return l;
    }

    void step1() {
        std::ostringstream d;
        bool ok = true;
        for (auto& s : sides_) {
            bool refl = false;
            try {
                refl = is_reflexive(*s.polytope);
            } catch (const Error& e) {
                d << s.key << ": " << e.what() << "; ";
            }
            s.report->reflexive = refl;
            ok = ok && refl;
            d << s.key << (refl ? " reflexive" : " not reflexive") << "; ";
        }
        std::string text = d.str();
        text.resize(text.size() - 2);
        record(1, "reflexive", ok ? StepStatus::Pass : StepStatus::Fail, text);
        if (!ok) blocking_.insert(1);
    }

    void step2() {
        if (!usable(1)) return record(2, "polar dual equivalence", StepStatus::Skipped, "needs reflexive polytopes");
        Polytope3 dual = polar_dual(*sides_[0].polytope);
        r_.equivalence = unimodular_equivalent(dual, *sides_[1].polytope);
        if (r_.equivalence)
            record(2, "polar dual equivalence", StepStatus::Pass,
                   "dual of delta maps onto delta_prime by T = " + to_string(*r_.equivalence));
        else
            record(2, "polar dual equivalence", StepStatus::Fail, "dual of delta is not equivalent to delta_prime");
    }

    void step3() {
        if (!usable(1)) {
            blocking_.insert(3);
            return record(3, "rk L0", StepStatus::Skipped, "needs reflexive polytopes");
        }
        bool ok = true;
        std::ostringstream d;
        for (auto& s : sides_) {
            s.report->rk_l0 = static_cast<long>(rk_l0(*s.polytope));
            ok = ok && s.report->rk_l0 == 0;
            d << s.key << " " << s.report->rk_l0 << (&s == &sides_[0] ? ", " : "");
        }
        record(3, "rk L0", ok ? StepStatus::Pass : StepStatus::Fail, d.str());
        if (!ok) blocking_.insert(3);
    }

    void step4() {
        if (!usable(1)) return record(4, "picard numbers", StepStatus::Skipped, "needs reflexive polytopes");
        StepStatus st = StepStatus::Pass;
        std::ostringstream d;
        long sum = 0;
        for (auto& s : sides_) {
            PicardCount pc = picard_counts(*s.polytope);
            s.report->counts = pc;
            sum += pc.from_rays;
            if (pc.from_rays != pc.from_points) {
                st = StepStatus::Fail;
                note(4, NoteLevel::Fail, s.key,
                     "ray count gives " + std::to_string(pc.from_rays) + ", point count gives " +
                         std::to_string(pc.from_points));
            }
            if (s.expected->rho && *s.expected->rho != pc.from_rays) {
                st = StepStatus::Fail;
                note(4, NoteLevel::Fail, s.key,
                     "expected rho " + std::to_string(*s.expected->rho) + ", computed " + std::to_string(pc.from_rays));
            }
        }
        r_.rho_sum = sum;
        if (sum != 20) st = StepStatus::Fail;
        d << "rho " << sides_[0].report->counts->from_rays << " + " << sides_[1].report->counts->from_rays << " = "
          << sum;
        record(4, "picard numbers", st, d.str());
    }

    void step5() {
        if (!usable(3)) {
            blocking_.insert(5);
            return record(5, "intersection matrices", StepStatus::Skipped, "needs reflexive polytopes with rk L0 = 0");
        }
        bool ok = true;
        std::ostringstream d;
        for (auto& s : sides_) {
            try {
                s.rays = picard_rays(*s.polytope, s.config->ordering);
                s.report->rays = s.rays->points();
                PicardBasis b = select_basis(*s.rays, s.config->dropped);
                s.report->basis = b;
                s.report->gram = intersection_matrix(*s.polytope, *s.rays, b).with_label(std::string("Pic ") + s.key);
                d << s.key << " " << s.report->gram->rank() << "x" << s.report->gram->rank() << "; ";
            } catch (const Error& e) {
                ok = false;
                d << s.key << ": " << e.what() << "; ";
            }
        }
        std::string text = d.str();
        text.resize(text.size() - 2);
        record(5, "intersection matrices", ok ? StepStatus::Pass : StepStatus::Fail, text);
        if (!ok) blocking_.insert(5);
    }

    void step6() {
        if (!usable(5)) {
            blocking_.insert(6);
            return record(6, "lattice invariants", StepStatus::Skipped, "needs both intersection matrices");
        }
        StepStatus st = StepStatus::Pass;
        std::ostringstream d;
        for (auto& s : sides_) {
            SideReport& sr = *s.report;
            sr.det = determinant(*sr.gram);
            try {
                sr.signature = signature(*sr.gram);
                sr.form = discriminant_form(*sr.gram);
            } catch (const Error& e) {
                st = StepStatus::Fail;
                note(6, NoteLevel::Fail, s.key, e.what());
                continue;
            }
            d << s.key << " det " << to_string(sr.det) << " sig " << to_string(*sr.signature) << " A = "
              << group_name(*sr.form) << "; ";
            const SideExpectation& ex = *s.expected;
            if (ex.det && *ex.det != sr.det) {
                st = StepStatus::Fail;
                note(6, NoteLevel::Fail, s.key, "expected det " + to_string(*ex.det) + ", computed " + to_string(sr.det));
            }
            if (ex.signature && !(*ex.signature == *sr.signature)) {
                st = StepStatus::Fail;
                note(6, NoteLevel::Fail, s.key,
                     "expected signature " + to_string(*ex.signature) + ", computed " + to_string(*sr.signature));
            }
            if (case_.expected.abs_discriminant && abs(sr.det) != *case_.expected.abs_discriminant) {
                st = StepStatus::Fail;
                note(6, NoteLevel::Fail, s.key,
                     "expected |discr| " + to_string(*case_.expected.abs_discriminant) + ", computed " +
                         to_string(Integer(abs(sr.det))));
            }
            if (case_.expected.invariant_factors && *case_.expected.invariant_factors != sr.form->invariant_factors) {
                st = StepStatus::Fail;
                note(6, NoteLevel::Fail, s.key, "discriminant group differs from the expected one");
            }
        }
        std::string text = d.str();
        if (text.size() > 2) text.resize(text.size() - 2);
        record(6, "lattice invariants", st, text);
        if (st == StepStatus::Fail) blocking_.insert(6);
    }

    static std::string group_name(const FiniteQuadraticForm& f) {
        if (f.invariant_factors.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < f.invariant_factors.size(); ++i)
            s += (i ? "+C" : "C") + to_string(f.invariant_factors[i]);
        return s;
    }

    void step7() {
        if (!usable(6)) return record(7, "embedding criteria", StepStatus::Skipped, "needs lattice invariants");
        bool ok = true;
        std::ostringstream d;
        for (auto& s : sides_) {
            NikulinReport n = nikulin_embedding_check(*s.report->gram, cfg_.ambient, cfg_.strict_nikulin);
            s.report->nikulin = n;
            ok = ok && n.passed();
            d << s.key << " " << (n.passed() ? "pass" : "fail") << " (" << n.rank_gap << (n.strict ? " > " : " >= ")
              << n.discriminant_length << ")" << (&s == &sides_[0] ? "; " : "");
            const SideExpectation& ex = *s.expected;
            auto claim = [&](const std::optional<long>& printed, long computed, const char* what) {
                if (printed && *printed != computed)
                    note(7, NoteLevel::Warn, s.key,
                         std::string("printed ") + what + " = " + std::to_string(*printed) + ", computed " +
                             std::to_string(computed));
            };
            claim(ex.discriminant_length, n.discriminant_length, "l(A)");
            claim(ex.negative_gap, n.negative_gap, "l- - t-");
            claim(ex.rank_gap, n.rank_gap, "rk ambient - rk L");
        }
        record(7, "embedding criteria", ok ? StepStatus::Pass : StepStatus::Fail, d.str());
    }

    void step8() {
        if (!usable(6)) return record(8, "orthogonality", StepStatus::Skipped, "needs lattice invariants");
        OrthogonalityResult o;
        const GramLattice& pic = *r_.delta.gram;
        GramLattice sum = direct_sum(pic, lattice_U());
        o.det_sum = determinant(sum);
        o.det_prime = r_.delta_prime.det;
        o.determinants_opposite = o.det_sum == -o.det_prime;
        FiniteQuadraticForm fs = discriminant_form(sum);
        o.shortcut_agrees = fs.invariant_factors == r_.delta.form->invariant_factors;
        std::string detail;
        try {
            o.witness = forms_opposite(fs, *r_.delta_prime.form);
        } catch (const Error& e) {
            detail = e.what();
        }
        bool ok = o.determinants_opposite && o.shortcut_agrees && o.witness.has_value();
        if (detail.empty())
            detail = "discr(Pic delta + U) = " + to_string(o.det_sum) + ", discr(Pic delta_prime) = " +
                     to_string(o.det_prime) + (o.witness ? ", q forms opposite" : ", no isomorphism q -> -q");
        r_.orthogonality = o;
        record(8, "orthogonality", ok ? StepStatus::Pass : StepStatus::Fail, detail);
    }

    LatticeCheck check_lattice(const GramLattice& source, const std::string& target,
                               std::optional<IntMatrix> rows) {
        LatticeCheck lc;
        lc.target = target;
        lc.target_lattice = parse_lattice_expression(target).with_label(target);
        lc.rows = std::move(rows);
        lc.source = source;
        const GramLattice& t = lc.target_lattice;
        if (lc.source.rank() != t.rank()) {
            lc.status = SearchStatus::Rejected;
            lc.detail = "rank " + std::to_string(lc.source.rank()) + " vs " + std::to_string(t.rank());
            return lc;
        }
        if (determinant(lc.source) != determinant(t) || !(signature(lc.source) == signature(t))) {
            lc.status = SearchStatus::Rejected;
            lc.detail = "det or signature differ";
            return lc;
        }
        lc.form_witness = find_form_isomorphism(discriminant_form(lc.source), discriminant_form(t), 1);
        lc.genus_match = lc.form_witness.has_value();
        if (!lc.genus_match) {
            lc.status = SearchStatus::Rejected;
            lc.detail = "discriminant forms differ";
            return lc;
        }
        if (lc.source.gram() == t.gram()) {
            lc.status = SearchStatus::Found;
            lc.witness = IntMatrix::identity(t.rank());
            lc.detail = "equal Gram matrices";
            return lc;
        }
        IsometryResult ir = find_isometry(lc.source, t, limits());
        lc.status = ir.status;
        lc.witness = ir.witness;
        lc.detail = ir.detail;
        return lc;
    }

    void step9() {
        if (!usable(6)) return record(9, "lattice identification", StepStatus::Skipped, "needs lattice invariants");
        StepStatus st = StepStatus::Skipped;
        std::ostringstream d;
        auto worsen = [&](StepStatus s) {
            auto rank = [](StepStatus x) {
                return x == StepStatus::Fail ? 3 : x == StepStatus::Warn ? 2 : x == StepStatus::Pass ? 1 : 0;
            };
            if (rank(s) > rank(st)) st = s;
        };
        for (auto& s : sides_) {
            const SideExpectation& ex = *s.expected;
            const GramLattice& g = *s.report->gram;
            auto judge = [&](const LatticeCheck& lc, bool mandatory) {
                d << s.key << (lc.rows ? " in new basis" : "") << " ~ " << lc.target << ": " << search_status_name(lc.status) << "; ";
                if (lc.status == SearchStatus::Found) {
                    worsen(StepStatus::Pass);
                } else if (lc.status == SearchStatus::Rejected) {
                    worsen(mandatory ? StepStatus::Fail : StepStatus::Warn);
                    note(9, mandatory ? NoteLevel::Fail : NoteLevel::Warn, s.key,
                         "not isometric to " + lc.target + " (" + lc.detail + ")");
                } else {
                    worsen(StepStatus::Warn);
                    note(9, NoteLevel::Warn, s.key,
                         "no isometry to " + lc.target + " within bound " + std::to_string(cfg_.limits.bound));
                }
            };
            if (ex.picard) {
                LatticeCheck lc = check_lattice(g, *ex.picard, std::nullopt);
                judge(lc, true);
                s.report->lattice_checks.push_back(std::move(lc));
            }
            for (const auto& alt : ex.alternative_picard) {
                LatticeCheck lc = check_lattice(g, alt, std::nullopt);
                if (lc.status != SearchStatus::Found)
                    note(9, NoteLevel::Warn, s.key,
                         "printed alternative " + alt + " does not match (" + lc.detail + ")");
                s.report->lattice_checks.push_back(std::move(lc));
            }
            for (const auto& bc : ex.basis_changes) {
                if (!bc.rows.square() || bc.rows.rows() != g.rank() || abs(determinant(bc.rows)) != 1) {
                    worsen(StepStatus::Fail);
                    note(9, NoteLevel::Fail, s.key, "basis change for " + bc.target + " is not unimodular");
                    continue;
                }
                LatticeCheck lc = check_lattice(apply_basis_change(g, bc.rows), bc.target, bc.rows);
                judge(lc, true);
                s.report->lattice_checks.push_back(std::move(lc));
            }
        }
        std::string text = d.str();
        if (text.size() > 2) text.resize(text.size() - 2);
        if (text.empty()) text = "no expected lattices";
        record(9, "lattice identification", st, text);
    }

    void step10() {
        if (!usable(6)) return record(10, "hyperbolic splitting", StepStatus::Skipped, "needs lattice invariants");
        StepStatus st = StepStatus::Skipped;
        std::ostringstream d;
        for (auto& s : sides_) {
            const SideExpectation& ex = *s.expected;
            const GramLattice& g = *s.report->gram;
            if (!ex.split_u || g.rank() < 12) continue;
            if (st == StepStatus::Skipped) st = StepStatus::Pass;
            HyperbolicPlaneResult hp = find_hyperbolic_plane(g, limits());
            SplitResult sr;
            sr.status = hp.status;
            sr.detail = hp.detail;
            bool expected = ex.complement_rank || ex.complement_det;
            if (hp.plane) {
                sr.plane = hp.plane;
                const GramLattice& k = hp.plane->complement.lattice;
                sr.complement_det = determinant(k);
                if (k.rank() > 0) sr.complement_signature = signature(k);
                d << s.key << ": U + K, rk K " << k.rank() << ", det K " << to_string(sr.complement_det) << "; ";
                if ((ex.complement_rank && *ex.complement_rank != static_cast<long>(k.rank())) ||
                    (ex.complement_det && *ex.complement_det != sr.complement_det)) {
                    st = StepStatus::Fail;
                    note(10, NoteLevel::Fail, s.key, "complement invariants differ from the expected ones");
                }
                if (sr.complement_signature && sr.complement_signature->positive != 0) {
                    st = StepStatus::Fail;
                    note(10, NoteLevel::Fail, s.key, "complement is not negative definite");
                }
            } else {
                d << s.key << ": " << search_status_name(hp.status) << "; ";
                if (expected) {
                    st = StepStatus::Fail;
                    note(10, NoteLevel::Fail, s.key, "no hyperbolic plane within bound " + std::to_string(cfg_.limits.bound));
                } else if (st != StepStatus::Fail) {
                    st = StepStatus::Warn;
                }
            }
            s.report->split = std::move(sr);
        }
        std::string text = d.str();
        if (text.size() > 2) text.resize(text.size() - 2);
        if (text.empty()) text = "not requested";
        record(10, "hyperbolic splitting", st, text);
    }

    const CaseDefinition& case_;
    const PipelineConfig& cfg_;
    DualityReport r_;
    std::array<Side, 2> sides_;
    std::set<int> blocking_;
};

}  // namespace

DualityReport verify_pair(const CaseDefinition& c, const PipelineConfig& config) {
    return Runner(c, config).run();
}

std::vector<DualityReport> verify_pairs(const std::vector<CaseDefinition>& cases, const PipelineConfig& config) {
    std::vector<DualityReport> out;
    if (!config.concurrent) {
        for (const auto& c : cases) out.push_back(verify_pair(c, config));
        return out;
    }
    std::vector<std::future<DualityReport>> jobs;
    for (const auto& c : cases) jobs.push_back(std::async(std::launch::async, [&c, &config] { return verify_pair(c, config); }));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace k3dual
