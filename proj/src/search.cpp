#include "k3dual/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <Eigen/Eigenvalues>

#include "k3dual/error.hpp"
#include "k3dual/smith.hpp"

namespace k3dual {

long default_search_bound() {
    if (const char* v = std::getenv("K3DUAL_SEARCH_BOUND")) {
        char* end = nullptr;
        long b = std::strtol(v, &end, 10);
        if (end && *end == '\0' && b > 0) return b;
    }
    return 8;
}

const char* search_status_name(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "found";
        case SearchStatus::NotFound: return "not found (bounded)";
        case SearchStatus::Rejected: return "rejected by invariants";
        case SearchStatus::Aborted: return "aborted (search limit)";
    }
    return "?";
}

namespace {

class Budget {
public:
    explicit Budget(const SearchLimits& l) : limits_(l) {}
    // False once the search must stop.
    bool tick() {
        if (exhausted_) return false;
        if (++nodes_ > limits_.max_nodes) return stop();
        if ((nodes_ & 1023u) == 0) {
            if (limits_.cancel && limits_.cancel->load()) return stop();
            if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline) return stop();
        }
        return true;
    }
    bool exhausted() const { return exhausted_; }

private:
    bool stop() {
        exhausted_ = true;
        return false;
    }
    const SearchLimits& limits_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

// Integer range [lo, hi] of x with (x - c)^2 <= t.
std::pair<Integer, Integer> ball_range(const Rational& c, const Rational& t) {
    const double s = std::sqrt(std::max(0.0, t.get_d()));
    const double cd = c.get_d();
    Integer hi(std::floor(cd + s)), lo(std::ceil(cd - s));
    auto inside_hi = [&](const Integer& x) { Rational d = x - c; return d <= 0 || d * d <= t; };
    auto inside_lo = [&](const Integer& x) { Rational d = c - x; return d <= 0 || d * d <= t; };
    while (inside_hi(hi + 1)) ++hi;
    while (!inside_hi(hi)) --hi;
    while (inside_lo(lo - 1)) --lo;
    while (!inside_lo(lo)) ++lo;
    return {lo, hi};
}

class ShortVectors {
public:
    ShortVectors(const IntMatrix& q, const Integer& radius, Budget& budget,
                 const std::function<bool(const IntVector&, const Integer&)>& visit)
        : n_(q.rows()), radius_(radius), budget_(budget), visit_(visit), x_(n_, Integer(0)) {
        d_.resize(n_);
        mu_.assign(n_, RatVector(n_));
        std::vector<RatVector> a(n_, RatVector(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) a[i][j] = q(i, j);
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i][i] <= 0) throw Error(ErrorCode::InvalidParameter, "form is not positive definite");
            d_[i] = a[i][i];
            for (std::size_t j = i + 1; j < n_; ++j) mu_[i][j] = a[i][j] / d_[i];
            for (std::size_t j = i + 1; j < n_; ++j)
                for (std::size_t k = i + 1; k < n_; ++k) a[j][k] -= a[i][j] * a[i][k] / d_[i];
        }
    }

    EnumerationOutcome run() {
        if (n_ == 0) return EnumerationOutcome::Completed;
        Rational r = radius_;
        return level(n_ - 1, r, false);
    }

private:
    EnumerationOutcome level(std::size_t i, const Rational& remaining, bool nonzero_above) {
        Rational c = 0;
        for (std::size_t j = i + 1; j < n_; ++j)
            if (x_[j] != 0) c -= mu_[i][j] * x_[j];
        auto [lo, hi] = ball_range(c, remaining / d_[i]);
        for (Integer v = lo; v <= hi; ++v) {
            if (!budget_.tick()) return EnumerationOutcome::Aborted;
            x_[i] = v;
            Rational diff = v - c;
            Rational rest = remaining - d_[i] * diff * diff;
            bool nz = nonzero_above || v != 0;
            if (i == 0) {
                if (!nz) continue;
                Rational norm = Rational(radius_) - rest;
                if (!visit_(x_, norm.get_num())) {
                    x_[i] = 0;
                    return EnumerationOutcome::Stopped;
                }
            } else {
                auto out = level(i - 1, rest, nz);
                if (out != EnumerationOutcome::Completed) {
                    x_[i] = 0;
                    return out;
                }
            }
        }
        x_[i] = 0;
        return EnumerationOutcome::Completed;
    }

    std::size_t n_;
    Integer radius_;
    Budget& budget_;
    const std::function<bool(const IntVector&, const Integer&)>& visit_;
    IntVector x_;
    RatVector d_;
    std::vector<RatVector> mu_;
};

IntMatrix negated(const IntMatrix& m) {
    IntMatrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = -m(i, j);
    return out;
}

// Order vectors by max |entry|, then by 1-norm, then larger leading entries first.
bool nicer(const IntVector& a, const IntVector& b) {
    Integer ma = 0, mb = 0, sa = 0, sb = 0;
    for (const auto& v : a) { ma = std::max<Integer>(ma, abs(v)); sa += abs(v); }
    for (const auto& v : b) { mb = std::max<Integer>(mb, abs(v)); sb += abs(v); }
    if (ma != mb) return ma < mb;
    if (sa != sb) return sa < sb;
    return b < a;
}

struct Candidate {
    std::vector<std::int64_t> x;
    std::vector<__int128> xg;
};

__int128 pair_of(const Candidate& a, const Candidate& b) {
    __int128 s = 0;
    for (std::size_t i = 0; i < a.x.size(); ++i) s += a.xg[i] * b.x[i];
    return s;
}

const Integer kInt32Max = Integer(2147483647);

Candidate make_candidate(const IntVector& v, const IntMatrix& g) {
    Candidate c;
    for (const auto& x : v) {
        if (abs(x) > kInt32Max) throw Error(ErrorCode::InvalidParameter, "coordinates too large for search");
        c.x.push_back(x.get_si());
    }
    for (std::size_t j = 0; j < g.cols(); ++j) {
        __int128 s = 0;
        for (std::size_t i = 0; i < v.size(); ++i) s += static_cast<__int128>(c.x[i]) * g(i, j).get_si();
        c.xg.push_back(s);
    }
    return c;
}

// Backtracking with forward checking. The next pattern row is the one with
// the fewest remaining candidates; ties go to rows in larger connected
// components of the pattern, so big blocks are placed before small ones.
class EmbeddingSearch {
public:
    EmbeddingSearch(const IntMatrix& pattern, std::vector<Candidate> cands,
                    const std::vector<std::vector<std::uint32_t>>& domains, Budget& budget)
        : p_(pattern), cands_(std::move(cands)), budget_(budget), chosen_(pattern.rows()), dom_(domains) {
        const std::size_t m = p_.rows();
        std::vector<std::size_t> comp(m, m);
        std::vector<std::size_t> comp_size;
        for (std::size_t s = 0; s < m; ++s) {
            if (comp[s] != m) continue;
            std::vector<std::size_t> stack{s};
            comp[s] = comp_size.size();
            std::size_t size = 0;
            while (!stack.empty()) {
                std::size_t v = stack.back();
                stack.pop_back();
                ++size;
                for (std::size_t w = 0; w < m; ++w)
                    if (comp[w] == m && p_(v, w) != 0) {
                        comp[w] = comp[s];
                        stack.push_back(w);
                    }
            }
            comp_size.push_back(size);
        }
        for (std::size_t v = 0; v < m; ++v) weight_.push_back(comp_size[comp[v]]);
    }

    // 1 found, 0 exhausted, -1 aborted
    int run() {
        std::vector<char> assigned(p_.rows(), 0);
        return dfs(0, dom_, assigned);
    }
    const std::vector<std::uint32_t>& chosen() const { return chosen_; }
    const Candidate& candidate(std::uint32_t i) const { return cands_[i]; }

private:
    int dfs(std::size_t count, const std::vector<std::vector<std::uint32_t>>& dom, std::vector<char>& assigned) {
        const std::size_t m = p_.rows();
        if (count == m) return 1;
        std::size_t v = m;
        for (std::size_t k = 0; k < m; ++k) {
            if (assigned[k]) continue;
            if (v == m || dom[k].size() < dom[v].size() ||
                (dom[k].size() == dom[v].size() && weight_[k] > weight_[v]))
                v = k;
        }
        assigned[v] = 1;
        for (std::uint32_t idx : dom[v]) {
            if (!budget_.tick()) return -1;
            chosen_[v] = idx;
            std::vector<std::vector<std::uint32_t>> next(m);
            bool dead = false;
            for (std::size_t k = 0; k < m && !dead; ++k) {
                if (assigned[k]) continue;
                const __int128 want = p_(v, k).get_si();
                for (std::uint32_t j : dom[k])
                    if (pair_of(cands_[idx], cands_[j]) == want) next[k].push_back(j);
                dead = next[k].empty();
            }
            if (dead) continue;
            int r = dfs(count + 1, next, assigned);
            if (r != 0) return r;
        }
        assigned[v] = 0;
        return 0;
    }

    const IntMatrix& p_;
    std::vector<Candidate> cands_;
    Budget& budget_;
    std::vector<std::uint32_t> chosen_;
    std::vector<std::vector<std::uint32_t>> dom_;
    std::vector<std::size_t> weight_;
};

// Odometer over the box [-b, b]^n, reporting vectors whose norm is wanted.
bool box_vectors(const IntMatrix& g, long b, const std::vector<Integer>& norms, Budget& budget,
                 std::vector<IntVector>& out) {
    const std::size_t n = g.rows();
    std::vector<std::int64_t> gm(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gm[i * n + j] = g(i, j).get_si();
    std::vector<std::int64_t> wanted;
    for (const auto& v : norms) wanted.push_back(v.get_si());
    std::vector<std::int64_t> x(n, -b), xg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) xg[j] += x[i] * gm[i * n + j];
    std::int64_t norm = 0;
    for (std::size_t i = 0; i < n; ++i) norm += x[i] * xg[i];
    auto shift = [&](std::size_t k, std::int64_t delta) {
        norm += 2 * delta * xg[k] + delta * delta * gm[k * n + k];
        for (std::size_t j = 0; j < n; ++j) xg[j] += delta * gm[k * n + j];
        x[k] += delta;
    };
    for (;;) {
        if (!budget.tick()) return false;
        if (std::find(wanted.begin(), wanted.end(), norm) != wanted.end() &&
            std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) {
            IntVector v;
            for (auto c : x) v.emplace_back(static_cast<long>(c));
            out.push_back(std::move(v));
        }
        std::size_t k = 0;
        while (k < n && x[k] == b) {
            shift(k, -2 * b);
            ++k;
        }
        if (k == n) break;
        shift(k, 1);
    }
    return true;
}

bool small_entries(const IntMatrix& m) { return m.max_abs() <= Integer(1000000); }

}  // namespace

EnumerationOutcome enumerate_short_vectors(const IntMatrix& q, const Integer& radius, const SearchLimits& limits,
                                           const std::function<bool(const IntVector&, const Integer&)>& visit) {
    Budget budget(limits);
    return ShortVectors(q, radius, budget, visit).run();
}

EmbeddingResult find_embedding(const GramLattice& pattern, const GramLattice& host, const SearchLimits& limits) {
    EmbeddingResult res;
    const std::size_t m = pattern.rank(), n = host.rank();
    if (m == 0) {
        res.status = SearchStatus::Found;
        res.rows = IntMatrix(0, n);
        res.exhaustive = true;
        return res;
    }
    if (m > n) {
        res.status = SearchStatus::Rejected;
        res.detail = "pattern rank exceeds host rank";
        return res;
    }
    if (!small_entries(pattern.gram()) || !small_entries(host.gram()))
        throw Error(ErrorCode::InvalidParameter, "Gram entries too large for search");

    std::vector<Integer> norms;
    for (std::size_t i = 0; i < m; ++i) norms.push_back(pattern.gram()(i, i));
    std::sort(norms.begin(), norms.end());
    norms.erase(std::unique(norms.begin(), norms.end()), norms.end());

    const SignaturePair hs = signature(host);
    const bool definite = hs.positive == 0 || hs.negative == 0;
    Budget budget(limits);

    auto solve = [&](std::vector<IntVector> vecs) -> int {
        std::sort(vecs.begin(), vecs.end(), nicer);
        std::vector<Candidate> cands;
        std::vector<Integer> cnorm;
        for (const auto& v : vecs) {
            cands.push_back(make_candidate(v, host.gram()));
            cnorm.push_back(host.norm(v));
        }
        std::vector<std::vector<std::uint32_t>> dom(m);
        for (std::size_t k = 0; k < m; ++k)
            for (std::uint32_t i = 0; i < cands.size(); ++i)
                if (cnorm[i] == pattern.gram()(k, k)) dom[k].push_back(i);
        for (const auto& d : dom)
            if (d.empty()) return 0;
        EmbeddingSearch search(pattern.gram(), std::move(cands), dom, budget);
        int r = search.run();
        if (r == 1) {
            IntMatrix b(m, n);
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t j = 0; j < n; ++j) b(k, j) = static_cast<long>(search.candidate(search.chosen()[k]).x[j]);
            res.rows = b;
        }
        return r;
    };

    if (definite) {
        const long s = hs.positive > 0 ? 1 : -1;
        Integer radius = 0;
        for (const auto& v : norms) {
            if (s * v <= 0) {
                res.status = SearchStatus::Rejected;
                res.detail = "definite host has no vectors of norm " + v.get_str();
                return res;
            }
            radius = std::max<Integer>(radius, s * v);
        }
        IntMatrix q = s > 0 ? host.gram() : negated(host.gram());
        std::vector<IntVector> vecs;
        auto out = ShortVectors(q, radius, budget, [&](const IntVector& x, const Integer& nm) {
                       if (std::binary_search(norms.begin(), norms.end(), Integer(s * nm))) vecs.push_back(x);
                       return true;
                   }).run();
        if (out == EnumerationOutcome::Aborted) {
            res.status = SearchStatus::Aborted;
            return res;
        }
        res.exhaustive = true;
        int r = solve(std::move(vecs));
        res.status = r == 1 ? SearchStatus::Found : (r == 0 ? SearchStatus::NotFound : SearchStatus::Aborted);
        if (r == 0) res.detail = "no embedding exists";
        return res;
    }

    for (long b = 1;; b = std::min(2 * b, limits.bound)) {
        std::vector<IntVector> vecs;
        if (!box_vectors(host.gram(), b, norms, budget, vecs)) {
            res.status = SearchStatus::Aborted;
            return res;
        }
        int r = solve(std::move(vecs));
        if (r == 1) {
            res.status = SearchStatus::Found;
            res.detail = "coordinates bounded by " + std::to_string(b);
            return res;
        }
        if (r < 0) {
            res.status = SearchStatus::Aborted;
            return res;
        }
        if (b >= limits.bound) break;
    }
    res.status = SearchStatus::NotFound;
    res.detail = "bound " + std::to_string(limits.bound);
    return res;
}

bool is_isometry_witness(const GramLattice& from, const GramLattice& to, const IntMatrix& b) {
    if (!b.square() || b.rows() != from.rank() || from.rank() != to.rank()) return false;
    if (abs(determinant(b)) != 1) return false;
    return b * from.gram() * b.transpose() == to.gram();
}

Complement orthogonal_complement(const GramLattice& l, const IntMatrix& rows) {
    if (rows.cols() != l.rank()) throw Error(ErrorCode::DimensionMismatch, "vectors have the wrong length");
    IntMatrix k = kernel_basis(rows * l.gram()).transpose();
    return {k, GramLattice(k * l.gram() * k.transpose())};
}

bool is_hyperbolic_plane(const GramLattice& l, const HyperbolicPlane& p) {
    if (p.e.size() != l.rank() || p.f.size() != l.rank()) return false;
    if (l.norm(p.e) != 0 || l.norm(p.f) != 0 || l.pair(p.e, p.f) != 1) return false;
    if (gcd_of(p.e) != 1 || gcd_of(p.f) != 1) return false;
    const Complement& c = p.complement;
    if (c.basis.rows() + 2 != l.rank() || c.basis.cols() != l.rank()) return false;
    IntMatrix all(l.rank(), l.rank());
    for (std::size_t j = 0; j < l.rank(); ++j) {
        all(0, j) = p.e[j];
        all(1, j) = p.f[j];
        for (std::size_t i = 0; i < c.basis.rows(); ++i) all(i + 2, j) = c.basis(i, j);
    }
    if (abs(determinant(all)) != 1) return false;
    IntMatrix g = all * l.gram() * all.transpose();
    return g == block_diagonal(lattice_U().gram(), c.lattice.gram());
}

HyperbolicPlane hyperbolic_split(const GramLattice& l, const IntVector& e, const IntVector& f) {
    if (e.size() != l.rank() || f.size() != l.rank())
        throw Error(ErrorCode::DimensionMismatch, "vectors have the wrong length");
    if (l.norm(e) != 0 || l.norm(f) != 0 || l.pair(e, f) != 1)
        throw Error(ErrorCode::InvalidParameter, "e, f must satisfy e^2 = f^2 = 0 and e.f = 1");
    HyperbolicPlane p{e, f, orthogonal_complement(l, IntMatrix::from_rows({e, f}))};
    return p;
}

std::optional<IntVector> hyperbolic_partner(const GramLattice& l, const IntVector& e) {
    const std::size_t n = l.rank();
    if (l.norm(e) != 0) return std::nullopt;
    IntVector a = row_times(e, l.gram());
    IntVector g(n, Integer(0));
    bool done = false;
    for (std::size_t j = 0; j < n && !done; ++j)
        if (abs(a[j]) == 1) {
            g[j] = a[j];
            done = true;
        }
    if (!done) {
        // Extended gcd across the coordinates.
        Integer cur = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a[j] == 0) continue;
            Integer d, s, t;
            mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cur.get_mpz_t(), a[j].get_mpz_t());
            for (auto& v : g) v *= s;
            g[j] += t;
            cur = d;
        }
        if (cur != 1) return std::nullopt;
    }
    Integer half = l.norm(g) / 2;
    IntVector f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = g[j] - half * e[j];
    return f;
}

namespace {

std::optional<IntVector> positive_vector(const GramLattice& l) {
    const std::size_t n = l.rank();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = l.gram()(i, j).get_d();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    Eigen::VectorXd v = es.eigenvectors().col(n - 1);
    const double scale = v.cwiseAbs().maxCoeff();
    std::optional<IntVector> best;
    Integer best_norm;
    for (double c = 0.5; c < 12.0; c += 0.25) {
        IntVector h(n);
        for (std::size_t i = 0; i < n; ++i) h[i] = static_cast<long>(std::lround(c * v(i) / scale));
        Integer nm = l.norm(h);
        if (nm > 0 && (!best || nm < best_norm)) {
            best = h;
            best_norm = nm;
        }
    }
    if (!best)
        for (std::size_t i = 0; i < n && !best; ++i)
            for (std::size_t j = i; j < n && !best; ++j) {
                IntVector h(n, Integer(0));
                h[i] += 1;
                h[j] += 1;
                if (l.norm(h) > 0) best = h;
            }
    return best;
}

}  // namespace

namespace {

// Collects up to max_count hyperbolic planes, nicest isotropic vectors first.
SearchStatus collect_planes(const GramLattice& l, const SearchLimits& limits, std::size_t max_count,
                            std::vector<HyperbolicPlane>& out, std::string& detail) {
    if (!l.is_even()) throw Error(ErrorCode::NotEven, "hyperbolic plane search needs an even lattice");
    const std::size_t n = l.rank();
    const SignaturePair sig = signature(l);
    if (sig.positive != 1 || n < 2)
        throw Error(ErrorCode::InvalidParameter, "hyperbolic plane search needs signature (1, n-1)");

    auto accept = [&](const IntVector& e) -> bool {
        if (gcd_of(row_times(e, l.gram())) != 1) return false;
        auto f = hyperbolic_partner(l, e);
        if (!f) return false;
        out.push_back(hyperbolic_split(l, e, *f));
        return out.size() >= max_count;
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (l.gram()(i, i) != 0) continue;
        IntVector e(n, Integer(0));
        e[i] = 1;
        if (accept(e)) {
            detail = "basis vector " + std::to_string(i + 1) + " is isotropic";
            return SearchStatus::Found;
        }
    }

    auto h = positive_vector(l);
    if (!h) {
        detail = "no positive vector found";
        return out.empty() ? SearchStatus::NotFound : SearchStatus::Found;
    }
    const IntVector a = row_times(*h, l.gram());
    const Integer hn = l.norm(*h);
    IntMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = 2 * a[i] * a[j] - hn * l.gram()(i, j);
    Integer a1 = 0;
    for (const auto& v : a) a1 += abs(v);
    const Integer kmax = a1 * limits.bound;

    Budget budget(limits);
    for (Integer k = 1; k <= kmax; ++k) {
        std::vector<IntVector> hits;
        auto res = ShortVectors(q, 2 * k * k, budget, [&](const IntVector& x, const Integer&) {
                       if (dot(x, a) != k || l.norm(x) != 0) return true;
                       for (const auto& c : x)
                           if (abs(c) > limits.bound) return true;
                       hits.push_back(x);
                       return true;
                   }).run();
        std::sort(hits.begin(), hits.end(), nicer);
        for (const auto& e : hits)
            if (accept(e)) {
                detail = "isotropic vector at height " + k.get_str();
                return SearchStatus::Found;
            }
        if (res == EnumerationOutcome::Aborted) {
            detail = "search limit reached at height " + k.get_str();
            return out.empty() ? SearchStatus::Aborted : SearchStatus::Found;
        }
        if (!out.empty() && max_count == 1) break;
    }
    detail = "bound " + std::to_string(limits.bound);
    return out.empty() ? SearchStatus::NotFound : SearchStatus::Found;
}

// Number of vectors of each norm up to `radius` in a definite lattice.
std::optional<std::vector<std::size_t>> norm_counts(const GramLattice& l, long radius, const SearchLimits& limits) {
    const SignaturePair sig = signature(l);
    const long s = sig.positive > 0 ? 1 : -1;
    IntMatrix q = s > 0 ? l.gram() : negated(l.gram());
    std::vector<std::size_t> counts(static_cast<std::size_t>(radius) + 1, 0);
    Budget budget(limits);
    auto out = ShortVectors(q, Integer(radius), budget, [&](const IntVector&, const Integer& nm) {
                   ++counts[nm.get_ui()];
                   return true;
               }).run();
    if (out == EnumerationOutcome::Aborted) return std::nullopt;
    return counts;
}

}  // namespace

HyperbolicPlaneResult find_hyperbolic_plane(const GramLattice& l, const SearchLimits& limits) {
    HyperbolicPlaneResult res;
    std::vector<HyperbolicPlane> planes;
    res.status = collect_planes(l, limits, 1, planes, res.detail);
    if (!planes.empty()) res.plane = planes.front();
    return res;
}

IsometryResult find_isometry(const GramLattice& from, const GramLattice& to, const SearchLimits& limits) {
    IsometryResult res;
    const std::size_t n = from.rank();
    auto reject = [&](const std::string& why) {
        res.status = SearchStatus::Rejected;
        res.detail = why;
        return res;
    };
    if (n != to.rank()) return reject("ranks differ");
    if (determinant(from) != determinant(to)) return reject("determinants differ");
    if (determinant(from) == 0) throw Error(ErrorCode::Degenerate, "isometry search needs nondegenerate lattices");
    const SignaturePair sig = signature(from);
    if (!(sig == signature(to))) return reject("signatures differ");
    if (from.gram() == to.gram()) {
        res.status = SearchStatus::Found;
        res.witness = IntMatrix::identity(n);
        return res;
    }

    const bool definite = sig.positive == 0 || sig.negative == 0;
    if (definite) {
        EmbeddingResult e = find_embedding(to, from, limits);
        res.status = e.status;
        res.detail = e.detail;
        if (e.rows && is_isometry_witness(from, to, *e.rows)) res.witness = e.rows;
        else if (e.status == SearchStatus::Found) res.status = SearchStatus::NotFound;
        if (res.status == SearchStatus::NotFound && e.exhaustive) res.detail = "exhaustive search found none";
        return res;
    }

    bool aborted = false;
    if (sig.positive == 1 && n >= 3 && from.is_even() && to.is_even()) {
        // Split U off the target once; try several splittings of the source,
        // because U + K determines K only up to genus.
        std::vector<HyperbolicPlane> target, source;
        std::string detail;
        auto st = collect_planes(to, limits, 1, target, detail);
        aborted |= st == SearchStatus::Aborted;
        if (!target.empty()) {
            st = collect_planes(from, limits, 48, source, detail);
            aborted |= st == SearchStatus::Aborted;
        }
        auto frame = [n](const HyperbolicPlane& p) {
            IntMatrix b(n, n);
            for (std::size_t j = 0; j < n; ++j) {
                b(0, j) = p.e[j];
                b(1, j) = p.f[j];
                for (std::size_t i = 0; i + 2 < n; ++i) b(i + 2, j) = p.complement.basis(i, j);
            }
            return b;
        };
        std::optional<std::vector<std::size_t>> want;
        long radius = 0;
        if (!target.empty()) {
            const IntMatrix& kg = target.front().complement.lattice.gram();
            for (std::size_t i = 0; i < kg.rows(); ++i) radius = std::max(radius, std::abs(kg(i, i).get_si()));
            want = norm_counts(target.front().complement.lattice, radius, limits);
        }
        for (const auto& p1 : source) {
            if (!want) break;
            auto have = norm_counts(p1.complement.lattice, radius, limits);
            if (!have || *have != *want) continue;
            IsometryResult inner = find_isometry(p1.complement.lattice, target.front().complement.lattice, limits);
            aborted |= inner.status == SearchStatus::Aborted;
            if (!inner.witness) continue;
            IntMatrix m = block_diagonal(IntMatrix::identity(2), *inner.witness) * frame(p1);
            IntMatrix b = unimodular_inverse(frame(target.front())) * m;
            if (is_isometry_witness(from, to, b)) {
                res.status = SearchStatus::Found;
                res.witness = b;
                res.detail = "split off U on both sides";
                return res;
            }
        }
    }

    double box = std::pow(2.0 * static_cast<double>(limits.bound) + 1.0, static_cast<double>(n));
    if (box <= 5e6) {
        EmbeddingResult e = find_embedding(to, from, limits);
        if (e.rows && is_isometry_witness(from, to, *e.rows)) {
            res.status = SearchStatus::Found;
            res.witness = e.rows;
            res.detail = e.detail;
            return res;
        }
        aborted |= e.status == SearchStatus::Aborted;
    }
    res.status = aborted ? SearchStatus::Aborted : SearchStatus::NotFound;
    res.detail = "bound " + std::to_string(limits.bound);
    return res;
}

}  // namespace k3dual
