/*
   Copyright 2026 The fdcube Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FDCUBE_ATTACK_HPP
#define FDCUBE_ATTACK_HPP

/**
 * @file attack.hpp
 * @brief Cube attack over GF(p) with repeated differentiation per variable.
 *
 * Preprocessing (secret chosen freely): for candidate terms
 * t = v_i1^m1 ... v_ik^mk in the public variables, evaluate
 * f_t(0, x) = sum over the grid of t of signed binomial weights times
 * f(offsets, x); keep t if f_t(0, x) passes a linearity test and is not
 * constant, storing c_0 = f_t(0, 0) and c_i = f_t(0, e_i) - c_0.
 *
 * Online (secret fixed and unknown): evaluate f_t(0, key) for every stored
 * term and solve sum_i c_i x_i = f_t(0, key) - c_0.
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "diff.hpp"
#include "error.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace fdcube {

/**
 * Evaluation-only keyed function f(public, secret) over GF(p).
 *
 * Implementations must be deterministic and safe to call concurrently.
 * evaluations() counts every call made through evaluate().
 */
class BlackBox {
  public:
    virtual ~BlackBox() = default;

    virtual const Field& field() const = 0;
    virtual std::size_t public_count() const = 0;
    virtual std::size_t secret_count() const = 0;

    Elem evaluate(std::span<const Elem> pub, std::span<const Elem> secret) const {
        if (pub.size() != public_count() || secret.size() != secret_count()) {
            throw InvalidArgument("black box called with wrong input sizes");
        }
        counter_.fetch_add(1, std::memory_order_relaxed);
        return evaluate_impl(pub, secret);
    }

    std::uint64_t evaluations() const noexcept { return counter_.load(std::memory_order_relaxed); }
    void reset_evaluations() const noexcept { counter_.store(0, std::memory_order_relaxed); }

  protected:
    virtual Elem evaluate_impl(std::span<const Elem> pub, std::span<const Elem> secret) const = 0;

  private:
    mutable std::atomic<std::uint64_t> counter_{0};
};

/// A polynomial f(v_1..v_npub, x_1..x_nsec): public variables come first.
class PolyBlackBox : public BlackBox {
  public:
    PolyBlackBox(MultiPoly f, std::size_t n_pub)
        : poly_(std::move(f)), eval_(poly_), n_pub_(n_pub) {
        if (n_pub > poly_.variables()) throw InvalidArgument("more public variables than polynomial variables");
    }

    const Field& field() const override { return poly_.field(); }
    std::size_t public_count() const override { return n_pub_; }
    std::size_t secret_count() const override { return poly_.variables() - n_pub_; }
    const MultiPoly& polynomial() const noexcept { return poly_; }

  protected:
    Elem evaluate_impl(std::span<const Elem> pub, std::span<const Elem> secret) const override {
        thread_local std::vector<Elem> x;
        x.assign(pub.begin(), pub.end());
        x.insert(x.end(), secret.begin(), secret.end());
        return eval_(x);
    }

  private:
    MultiPoly poly_;
    PolyEvaluator eval_;
    std::size_t n_pub_;
};

/// f_t(0, x) for one cube term, with the grid built once.
class CubeSum {
  public:
    CubeSum(const BlackBox& bb, const Monomial& term)
        : bb_(bb), term_(term), grid_(bb.field(), DiffPlan::from_term(bb.field(), term), bb.public_count()),
          zeros_(bb.public_count(), bb.field().zero()) {
        if (!bb.field().is_prime_field()) throw InvalidArgument("the cube attack runs over prime fields");
        if (term.size() != bb.public_count()) throw InvalidArgument("cube term must range over the public variables");
    }

    std::size_t grid_size() const noexcept { return grid_.size(); }
    const Monomial& term() const noexcept { return term_; }

    /// f_t(0, secret); adds the number of black-box calls to `calls`.
    Elem operator()(std::span<const Elem> secret, std::uint64_t& calls) const {
        calls += grid_.size();
        return grid_.evaluate([&](std::span<const Elem> pub) { return bb_.evaluate(pub, secret); }, zeros_);
    }

  private:
    const BlackBox& bb_;
    Monomial term_;
    DiffGrid grid_;
    std::vector<Elem> zeros_;
};

enum class Verdict { likely_linear, nonlinear, constant };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::likely_linear: return "likely-linear";
        case Verdict::nonlinear: return "nonlinear";
        case Verdict::constant: return "constant";
    }
    return "?";
}

struct LinearityResult {
    Verdict verdict = Verdict::constant;
    Elem c0;  ///< f_t(0, 0)
    std::uint64_t evaluations = 0;
    std::uint64_t trials_run = 0;
};

/**
 * Default number of linearity trials.
 *
 * Each trial checks a(g(y) - g(0)) + b(g(z) - g(0)) = g(ay + bz) - g(0) at
 * uniform a, b, y, z. If a nonlinear g survives one trial with probability
 * at most 0.31 (p >= 5) or 0.5 (p <= 3), 12 resp. 20 trials keep the
 * false-accept probability below 2^-20. The per-trial rates are checked
 * empirically on random low-degree polynomials in the test suite.
 */
inline std::uint64_t default_linearity_trials(std::uint64_t p) { return p >= 5 ? 12 : 20; }

/// Linearity test on g(x) = f_t(0, x); stops at the first failing trial.
inline LinearityResult linearity_test(const CubeSum& g, const Field& F, std::size_t n_sec, std::uint64_t trials, Rng& rng) {
    if (trials == 0) throw InvalidArgument("linearity test needs at least one trial");
    LinearityResult out;
    std::vector<Elem> zero(n_sec, F.zero()), y(n_sec), z(n_sec), w(n_sec);
    out.c0 = g(zero, out.evaluations);
    bool varies = false;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ++out.trials_run;
        const Elem a = random_element(F, rng), b = random_element(F, rng);
        for (std::size_t i = 0; i < n_sec; ++i) {
            y[i] = random_element(F, rng);
            z[i] = random_element(F, rng);
            w[i] = F.add(F.mul(a, y[i]), F.mul(b, z[i]));
        }
        const Elem gy = F.sub(g(y, out.evaluations), out.c0);
        const Elem gz = F.sub(g(z, out.evaluations), out.c0);
        const Elem gw = F.sub(g(w, out.evaluations), out.c0);
        varies = varies || !F.is_zero(gy) || !F.is_zero(gz) || !F.is_zero(gw);
        if (F.add(F.mul(a, gy), F.mul(b, gz)) != gw) {
            out.verdict = Verdict::nonlinear;
            return out;
        }
    }
    out.verdict = varies ? Verdict::likely_linear : Verdict::constant;
    return out;
}

inline LinearityResult linearity_test(const BlackBox& bb, const Monomial& t, std::uint64_t trials, std::uint64_t seed) {
    Rng rng(seed);
    return linearity_test(CubeSum(bb, t), bb.field(), bb.secret_count(), trials, rng);
}

/// One discovered relation f_t(0, x) = c0 + sum c_i x_i.
struct MaxtermRecord {
    Monomial term;
    Elem c0;
    std::vector<Elem> c;
    std::uint64_t evaluations = 0;

    bool usable(const Field& F) const {
        return std::any_of(c.begin(), c.end(), [&](Elem v) { return !F.is_zero(v); });
    }
    friend bool operator==(const MaxtermRecord&, const MaxtermRecord&) = default;
};

namespace detail {

inline MaxtermRecord extract_with_c0(const CubeSum& g, const Field& F, std::size_t n_sec, Elem c0, std::uint64_t& calls) {
    MaxtermRecord rec{g.term(), c0, std::vector<Elem>(n_sec, F.zero()), 0};
    std::vector<Elem> e(n_sec, F.zero());
    for (std::size_t i = 0; i < n_sec; ++i) {
        e[i] = F.one();
        rec.c[i] = F.sub(g(e, calls), c0);
        e[i] = F.zero();
    }
    return rec;
}

}  // namespace detail

/// c_0 = f_t(0, 0), c_i = f_t(0, e_i) - c_0; costs (n_sec + 1) grids.
inline MaxtermRecord extract_linear(const BlackBox& bb, const Monomial& t) {
    const CubeSum g(bb, t);
    const Field& F = bb.field();
    std::uint64_t calls = 0;
    const Elem c0 = g(std::vector<Elem>(bb.secret_count(), F.zero()), calls);
    auto rec = detail::extract_with_c0(g, F, bb.secret_count(), c0, calls);
    rec.evaluations = calls;
    return rec;
}

/**
 * Candidate cube terms in cost-aware order: increasing total multiplicity M;
 * for equal M, fewer variables first; then variable sets in lexicographic
 * order; for one variable set, smaller grids prod(m_i + 1) first (ties broken
 * by giving the earlier variable the larger exponent). Each m_i <= p - 1.
 */
class CandidateTerms {
  public:
    CandidateTerms(std::size_t n_pub, std::uint64_t p, std::uint64_t max_total)
        : n_(n_pub), cap_(p - 1), max_total_(std::min<std::uint64_t>(max_total, n_pub * (p - 1))) {}

    std::optional<Monomial> next() {
        while (pos_ >= batch_.size()) {
            if (!advance()) return std::nullopt;
        }
        return batch_[pos_++];
    }

  private:
    bool advance() {
        batch_.clear();
        pos_ = 0;
        if (n_ == 0) return false;
        // move to the next (M, k, subset)
        if (subset_.empty()) {
            total_ = 1;
            k_ = 1;
            subset_ = {0};
        } else if (!next_subset()) {
            if (++k_ > std::min<std::uint64_t>(total_, n_)) {
                k_ = 1;
                if (++total_ > max_total_) return false;
            }
            subset_.resize(k_);
            for (std::size_t i = 0; i < k_; ++i) subset_[i] = i;
        }
        if (total_ > max_total_) return false;
        fill_batch();
        return true;
    }

    bool next_subset() {
        std::size_t i = k_;
        while (i-- > 0) {
            if (subset_[i] < n_ - k_ + i) {
                ++subset_[i];
                for (std::size_t j = i + 1; j < k_; ++j) subset_[j] = subset_[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

    void fill_batch() {
        std::vector<std::uint64_t> mult(k_, 1);
        std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> found;
        // compositions of total_ into k_ parts in 1..cap_
        auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
            if (i + 1 == k_) {
                if (left >= 1 && left <= cap_) {
                    mult[i] = left;
                    std::uint64_t cost = 1;
                    for (auto v : mult) cost *= v + 1;
                    found.emplace_back(cost, mult);
                }
                return;
            }
            for (std::uint64_t v = 1; v <= cap_ && v + (k_ - i - 1) <= left; ++v) {
                mult[i] = v;
                self(self, i + 1, left - v);
            }
        };
        rec(rec, 0, total_);
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        });
        for (const auto& [cost, mv] : found) {
            Monomial t(n_);
            for (std::size_t i = 0; i < k_; ++i) t[subset_[i]] = static_cast<std::uint32_t>(mv[i]);
            batch_.push_back(std::move(t));
        }
    }

    std::size_t n_;
    std::uint64_t cap_;
    std::uint64_t max_total_;
    std::uint64_t total_ = 0;
    std::size_t k_ = 0;
    std::vector<std::size_t> subset_;
    std::vector<Monomial> batch_;
    std::size_t pos_ = 0;
};

struct PreprocessOptions {
    std::uint64_t budget = 1'000'000;  ///< maximum black-box evaluations
    std::uint64_t max_total_multiplicity = 0;  ///< 0: n_pub (p - 1)
    std::uint64_t trials = 0;          ///< 0: default_linearity_trials(p)
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

enum class PreprocessStatus { full_rank, budget_exhausted, candidates_exhausted };

inline const char* to_string(PreprocessStatus s) {
    switch (s) {
        case PreprocessStatus::full_rank: return "full-rank";
        case PreprocessStatus::budget_exhausted: return "budget-exhausted";
        case PreprocessStatus::candidates_exhausted: return "candidates-exhausted";
    }
    return "?";
}

struct PreprocessResult {
    std::vector<MaxtermRecord> records;    ///< independent rows, in discovery order
    std::vector<MaxtermRecord> dependent;  ///< linear but in the span of earlier rows
    std::uint64_t terms_tried = 0;
    std::uint64_t evaluations = 0;
    std::size_t rank = 0;
    PreprocessStatus status = PreprocessStatus::candidates_exhausted;
};

namespace detail {

struct CandidateOutcome {
    LinearityResult test;
    std::optional<MaxtermRecord> record;
    std::uint64_t evaluations = 0;
};

inline CandidateOutcome run_candidate(const BlackBox& bb, const Monomial& t, std::uint64_t trials, std::uint64_t seed) {
    CandidateOutcome out;
    const CubeSum g(bb, t);
    Rng rng(seed);
    out.test = linearity_test(g, bb.field(), bb.secret_count(), trials, rng);
    out.evaluations = out.test.evaluations;
    if (out.test.verdict == Verdict::likely_linear) {
        auto rec = extract_with_c0(g, bb.field(), bb.secret_count(), out.test.c0, out.evaluations);
        rec.evaluations = out.evaluations;
        out.record = std::move(rec);
    }
    return out;
}

}  // namespace detail

/**
 * Searches cube terms until n_sec independent linear relations are found,
 * the candidates run out, or the next candidate could overrun the budget.
 *
 * Every candidate gets its own generator seeded from (seed, candidate
 * index), and results are merged in candidate order, so the output depends
 * only on the seed. With jobs > 1 candidates are run in batches of `jobs`
 * threads; the budget reserves each candidate's worst-case cost
 * grid * (1 + 3 trials + n_sec) before it starts.
 */
inline PreprocessResult preprocess(const BlackBox& bb, const PreprocessOptions& opt) {
    const Field& F = bb.field();
    if (!F.is_prime_field()) throw InvalidArgument("the cube attack runs over prime fields");
    if (opt.budget == 0) throw InvalidArgument("budget must be positive");
    const std::uint64_t p = F.characteristic();
    const std::size_t n_pub = bb.public_count(), n_sec = bb.secret_count();
    const std::uint64_t trials = opt.trials ? opt.trials : default_linearity_trials(p);
    const std::uint64_t max_total = opt.max_total_multiplicity ? opt.max_total_multiplicity : n_pub * (p - 1);
    const unsigned jobs = std::max(1u, opt.jobs);

    PreprocessResult res;
    if (n_sec == 0) {
        res.status = PreprocessStatus::full_rank;
        return res;
    }
    if (n_pub == 0) throw InvalidArgument("no public variables to build cubes from");

    EchelonBasis basis(F, n_sec);
    CandidateTerms candidates(n_pub, p, max_total);
    std::uint64_t index = 0;
    while (true) {
        std::vector<Monomial> batch;
        std::vector<std::uint64_t> seeds;
        std::uint64_t reserved = 0;
        bool over_budget = false;
        while (batch.size() < jobs) {
            auto t = candidates.next();
            if (!t) break;
            std::uint64_t grid = 1;
            for (auto e : t->exps) grid *= e + 1;
            const std::uint64_t worst = grid * (1 + 3 * trials + n_sec);
            if (res.evaluations + reserved + worst > opt.budget) {
                over_budget = true;
                break;
            }
            reserved += worst;
            batch.push_back(std::move(*t));
            seeds.push_back(derive_seed(opt.seed, index++));
        }
        std::vector<detail::CandidateOutcome> outcomes(batch.size());
        if (batch.size() == 1 || jobs == 1) {
            for (std::size_t i = 0; i < batch.size(); ++i) outcomes[i] = detail::run_candidate(bb, batch[i], trials, seeds[i]);
        } else {
            std::vector<std::thread> workers;
            for (std::size_t i = 0; i < batch.size(); ++i) {
                workers.emplace_back([&, i] { outcomes[i] = detail::run_candidate(bb, batch[i], trials, seeds[i]); });
            }
            for (auto& w : workers) w.join();
        }
        for (auto& oc : outcomes) {
            ++res.terms_tried;
            res.evaluations += oc.evaluations;
            if (!oc.record || !oc.record->usable(F) || res.rank == n_sec) continue;
            const auto status = basis.insert(oc.record->c, F.zero());
            if (status == RowStatus::independent) {
                res.records.push_back(std::move(*oc.record));
                res.rank = basis.rank();
            } else {
                res.dependent.push_back(std::move(*oc.record));
            }
        }
        if (res.rank == n_sec) {
            res.status = PreprocessStatus::full_rank;
            return res;
        }
        if (over_budget) {
            res.status = PreprocessStatus::budget_exhausted;
            return res;
        }
        if (batch.empty()) {
            res.status = PreprocessStatus::candidates_exhausted;
            return res;
        }
    }
}

struct OnlineResult {
    Solution solution;
    /// The recovered secret when the system has a unique solution.
    std::optional<std::vector<Elem>> key;
    std::uint64_t evaluations = 0;
    /// Record whose equation contradicts the earlier ones (false maxterm).
    std::optional<std::size_t> inconsistent_record;

    std::size_t rank() const noexcept { return solution.rank; }
    /// Secret variables left for exhaustive search.
    std::size_t unresolved() const noexcept { return solution.free_variables.size(); }
};

/**
 * Online phase: `oracle(pub)` evaluates the target with the unknown secret.
 * Builds sum_i c_i x_i = f_t(0) - c_0 for every record and solves it.
 */
template <class Oracle>
OnlineResult online(const Field& F, std::size_t n_pub, std::size_t n_sec, Oracle&& oracle,
                    const std::vector<MaxtermRecord>& records) {
    OnlineResult out;
    LinearSystem sys{F, n_sec, {}, {}};
    const std::vector<Elem> zeros(n_pub, F.zero());
    for (const auto& rec : records) {
        if (rec.c.size() != n_sec) throw InvalidArgument("record width does not match the secret size");
        if (rec.term.size() != n_pub) throw InvalidArgument("record term does not match the public size");
        const DiffGrid grid(F, DiffPlan::from_term(F, rec.term), n_pub);
        out.evaluations += grid.size();
        const Elem value = grid.evaluate(oracle, zeros);
        sys.add_row(rec.c, F.sub(value, rec.c0));
    }
    out.solution = gaussian_solve(sys);
    if (out.solution.kind == Solution::Kind::inconsistent) {
        out.inconsistent_record = out.solution.inconsistent_row;
    } else if (out.solution.kind == Solution::Kind::unique) {
        out.key = out.solution.particular;
    }
    return out;
}

/// Online phase against a black box whose secret input is held fixed.
inline OnlineResult online(const BlackBox& bb, std::span<const Elem> secret, const std::vector<MaxtermRecord>& records) {
    std::vector<Elem> key(secret.begin(), secret.end());
    auto oracle = [&bb, &key](std::span<const Elem> pub) { return bb.evaluate(pub, key); };
    return online(bb.field(), bb.public_count(), bb.secret_count(), oracle, records);
}

// ---------------------------------------------------------------------------
// Record files
//
//   # fdcube maxterms v1
//   # seed=<seed> n_pub=<n> n_sec=<n>
//   field=31 term=x1^5 c0=0 c=27,0,0 evals=12

struct RecordFile {
    std::optional<Field> field;
    std::uint64_t seed = 0;
    std::size_t n_pub = 0;
    std::size_t n_sec = 0;
    std::vector<MaxtermRecord> records;
};

inline void write_records(std::ostream& os, const Field& F, std::uint64_t seed, std::size_t n_pub, std::size_t n_sec,
                          const std::vector<MaxtermRecord>& records) {
    os << "# fdcube maxterms v1\n";
    os << "# seed=" << seed << " n_pub=" << n_pub << " n_sec=" << n_sec << "\n";
    for (const auto& r : records) {
        os << "field=" << F.spec_text() << " term=" << format_monomial(r.term) << " c0=" << F.format(r.c0) << " c=";
        for (std::size_t i = 0; i < r.c.size(); ++i) os << (i ? "," : "") << F.format(r.c[i]);
        os << " evals=" << r.evaluations << "\n";
    }
}

inline RecordFile read_records(std::istream& is) {
    RecordFile out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto where = [&](const std::string& msg) { return ParseError("record line " + std::to_string(lineno) + ": " + msg, 0); };
        std::string_view v = detail::strip(line);
        if (v.empty()) continue;
        std::istringstream fields{std::string(v.starts_with('#') ? v.substr(1) : v)};
        std::string tok;
        std::string field_txt, term_txt, c0_txt, c_txt, evals_txt;
        while (fields >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) {
                if (v.starts_with('#')) continue;
                throw where("expected key=value, got '" + tok + "'");
            }
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            std::uint64_t num = 0;
            if (key == "seed" || key == "n_pub" || key == "n_sec") {
                if (!detail::parse_u64(val, num)) throw where("bad number for " + key);
                if (key == "seed") out.seed = num;
                if (key == "n_pub") out.n_pub = num;
                if (key == "n_sec") out.n_sec = num;
            } else if (key == "field") {
                field_txt = val;
            } else if (key == "term") {
                term_txt = val;
            } else if (key == "c0") {
                c0_txt = val;
            } else if (key == "c") {
                c_txt = val;
            } else if (key == "evals") {
                evals_txt = val;
            } else {
                throw where("unknown key '" + key + "'");
            }
        }
        if (v.starts_with('#')) continue;
        if (field_txt.empty() || term_txt.empty() || c0_txt.empty() || c_txt.empty()) throw where("missing field");
        const Field F = Field::parse(field_txt);
        if (out.field && !(*out.field == F)) throw where("records over different fields");
        out.field = F;
        MaxtermRecord rec;
        rec.term = parse_monomial(term_txt, F, out.n_pub);
        rec.c0 = F.parse_element(c0_txt);
        std::string_view cs = c_txt;
        while (true) {
            const auto comma = cs.find(',');
            rec.c.push_back(F.parse_element(cs.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            cs.remove_prefix(comma + 1);
        }
        if (out.n_sec != 0 && rec.c.size() != out.n_sec) throw where("c-vector length differs from n_sec");
        if (!evals_txt.empty() && !detail::parse_u64(evals_txt, rec.evaluations)) throw where("bad evals");
        out.records.push_back(std::move(rec));
    }
    return out;
}

}  // namespace fdcube

#endif  // FDCUBE_ATTACK_HPP
