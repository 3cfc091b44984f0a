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

#ifndef FDCUBE_REDUCE_PM_HPP
#define FDCUBE_REDUCE_PM_HPP

/**
 * @file reduce_pm.hpp
 * @brief Differences over GF(p^m) seen coordinate-wise over GF(p).
 *
 * With the polynomial basis b_j = a^j, phi maps x in GF(p^m) to its m
 * coordinates. A function f : GF(p^m)^n -> GF(p^m) becomes m component
 * functions GF(p)^(mn) -> GF(p), and a difference with step b_j on x_i
 * becomes a unit-step difference on the coordinate variable x_(i,j).
 *
 * Coordinate variable x_(i,j) has index i*m + j in the projected space.
 */

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "combinat.hpp"
#include "diff.hpp"
#include "error.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "rng.hpp"

namespace fdcube {

using BoxFn = std::function<Elem(std::span<const Elem>)>;

class ProjectionContext {
  public:
    ProjectionContext(Field source, std::size_t n)
        : source_(std::move(source)), target_(Field::prime(source_.characteristic())), n_(n), basis_(source_.basis()) {}

    const Field& source() const noexcept { return source_; }
    const Field& target() const noexcept { return target_; }
    std::size_t variables() const noexcept { return n_; }
    std::size_t degree() const noexcept { return source_.degree(); }
    std::size_t projected_variables() const noexcept { return n_ * source_.degree(); }
    const std::vector<Elem>& basis() const noexcept { return basis_; }

    std::size_t projected_index(std::size_t var, std::size_t coord) const { return var * degree() + coord; }

    /// phi: n elements of GF(p^m) -> mn elements of GF(p).
    std::vector<Elem> phi(std::span<const Elem> x) const {
        if (x.size() != n_) throw InvalidArgument("point has wrong dimension");
        std::vector<Elem> out;
        out.reserve(projected_variables());
        for (auto v : x) {
            for (std::size_t j = 0; j < degree(); ++j) out.push_back(Elem{source_.coord(v, static_cast<unsigned>(j))});
        }
        return out;
    }

    /// phi^-1: x_i = sum_j x_(i,j) b_j.
    std::vector<Elem> phi_inv(std::span<const Elem> coords) const {
        if (coords.size() != projected_variables()) throw InvalidArgument("coordinate vector has wrong dimension");
        std::vector<Elem> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Elem acc = source_.zero();
            for (std::size_t j = 0; j < degree(); ++j) acc = source_.add(acc, source_.scale(basis_[j], coords[i * degree() + j].code));
            out[i] = acc;
        }
        return out;
    }

  private:
    Field source_;
    Field target_;
    std::size_t n_;
    std::vector<Elem> basis_;
};

/// The m component black boxes: component j maps coordinates c to the j-th
/// coordinate of f(phi^-1(c)).
inline std::vector<BoxFn> project_blackbox(const ProjectionContext& ctx, BoxFn f) {
    std::vector<BoxFn> out;
    for (std::size_t j = 0; j < ctx.degree(); ++j) {
        out.emplace_back([ctx, f, j](std::span<const Elem> coords) {
            const auto x = ctx.phi_inv(coords);
            return Elem{ctx.source().coord(f(x), static_cast<unsigned>(j))};
        });
    }
    return out;
}

/// Component polynomials over GF(p) in mn variables, by interpolation
/// (p^(mn) <= 2^16 only).
inline std::vector<MultiPoly> component_polys(const ProjectionContext& ctx, const MultiPoly& f) {
    if (!(f.field() == ctx.source())) throw InvalidArgument("polynomial is not over the context's field");
    std::vector<MultiPoly> out;
    const PolyEvaluator eval(f);
    for (const auto& comp : project_blackbox(ctx, [&eval](std::span<const Elem> x) { return eval(x); })) {
        out.push_back(interpolate(ctx.target(), ctx.projected_variables(), function_table(ctx.target(), ctx.projected_variables(), comp)));
    }
    return out;
}

/// Bound on the total degree of every component in x_(i,0), ..., x_(i,m-1):
/// the digit-sum degree of f in x_i.
inline std::uint64_t component_degree_bound(const MultiPoly& f, std::size_t var) {
    if (var >= f.variables()) throw InvalidArgument("variable index out of range");
    return degrees(f).digit_sum[var];
}

struct ReductionReport {
    std::uint64_t points_checked = 0;
    std::uint64_t mismatches = 0;
    bool exhaustive = false;

    bool ok() const noexcept { return mismatches == 0 && points_checked > 0; }
};

struct ReductionOptions {
    std::size_t var = 0;                        ///< the differentiated variable x_(var+1)
    std::uint64_t exhaustive_limit = 1u << 16;  ///< check every point up to this many
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
};

/**
 * Compares, at every point of GF(p)^(mn) (or a seeded sample), the
 * coordinates of f differentiated r_j times with step b_j along x_var
 * against the components differentiated r_j times with step 1 along
 * x_(var,j). Requires 0 <= r_j <= p - 1.
 */
inline ReductionReport verify_reduction(const ProjectionContext& ctx, const BoxFn& f, std::span<const std::uint64_t> r,
                                        const ReductionOptions& opt = {}) {
    const Field& E = ctx.source();
    const Field& P = ctx.target();
    const std::uint64_t p = E.characteristic();
    const std::size_t m = ctx.degree();
    if (r.size() != m) throw InvalidArgument("need one repetition count per basis element");
    if (opt.var >= ctx.variables()) throw InvalidArgument("variable index out of range");

    std::vector<Elem> ext_steps;
    DiffPlan projected;
    for (std::size_t j = 0; j < m; ++j) {
        if (r[j] > p - 1) throw InvalidArgument("repetition counts must be at most p-1");
        for (std::uint64_t k = 0; k < r[j]; ++k) ext_steps.push_back(ctx.basis()[j]);
        if (r[j] > 0) projected.entries().push_back({ctx.projected_index(opt.var, j), std::vector<Elem>(r[j], P.one())});
    }
    DiffPlan ext_plan;
    if (!ext_steps.empty()) ext_plan.entries().push_back({opt.var, ext_steps});

    const DiffGrid ext_grid(E, ext_plan, ctx.variables());
    const DiffGrid prime_grid(P, projected, ctx.projected_variables());
    const auto components = project_blackbox(ctx, f);

    ReductionReport report;
    const std::size_t mn = ctx.projected_variables();
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < mn && small; ++i) {
        if (total > opt.exhaustive_limit / p) small = false;
        total *= p;
    }
    report.exhaustive = small && total <= opt.exhaustive_limit;

    std::vector<Elem> coords(mn);
    auto check = [&] {
        const Elem lhs = ext_grid.evaluate(f, ctx.phi_inv(coords));
        for (std::size_t j = 0; j < m; ++j) {
            const Elem rhs = prime_grid.evaluate(components[j], coords);
            if (rhs.code != E.coord(lhs, static_cast<unsigned>(j))) {
                ++report.mismatches;
                break;
            }
        }
        ++report.points_checked;
    };

    if (report.exhaustive) {
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < mn; ++i) {
                coords[i] = Elem{v % p};
                v /= p;
            }
            check();
        }
    } else {
        Rng rng(opt.seed);
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
            for (auto& c : coords) c = Elem{rng.below(p)};
            check();
        }
    }
    return report;
}

}  // namespace fdcube

#endif  // FDCUBE_REDUCE_PM_HPP
