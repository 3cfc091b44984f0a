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


// fdcube command-line front end.
//
// Exit status: 0 success, 2 input error, 3 no full rank (preprocessing ran
// out of budget or candidates; online system underdetermined), 4 internal
// invariant violation.

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fdcube/fdcube.hpp"

namespace {

using namespace fdcube;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNoFullRank = 3;
constexpr int kInvariant = 4;

/// Thrown for violated internal invariants; maps to exit status 4.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string field = "31";
    std::string plan;
    std::string steps;
    std::uint64_t budget = 1'000'000;
    std::uint64_t trials = 0;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::string out;

    // subcommand inputs
    std::string poly;
    std::uint64_t d = 0, k = 0;
    std::string target, records;
    std::string kind = "planted";
    std::size_t n_pub = 3, n_sec = 4, width = 3, rounds = 1;
    std::uint64_t degree = 4, maxterms = 0, noise = 8;
    bool no_key = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline text, or the contents of a file when written as @path.
std::string text_arg(const std::string& arg) { return arg.starts_with('@') ? slurp(arg.substr(1)) : arg; }

/// Writes to --out when given, stdout otherwise.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InvalidArgument("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    bool to_file() const { return file_.is_open(); }

  private:
    std::ofstream file_;
};

std::vector<Elem> parse_steps(const Field& F, const std::string& text) {
    std::vector<Elem> out;
    std::string_view s = text;
    while (!s.empty()) {
        const auto comma = s.find(',');
        out.push_back(F.parse_element(detail::strip(s.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

// --- diff ---------------------------------------------------------------------

int cmd_diff(const Options& o) {
    const Field F = Field::parse(o.field);
    if (o.plan.empty()) throw InvalidArgument("--plan is required");
    const std::string text = text_arg(o.poly);
    const Monomial probe = parse_monomial(o.plan, F);
    const MultiPoly g = parse_poly(text, F);
    const std::size_t n = std::max(g.variables(), probe.size());
    const MultiPoly f = parse_poly(text, F, n);
    const Monomial t = parse_monomial(o.plan, F, n);
    const DiffPlan plan = o.steps.empty() ? DiffPlan::from_term(F, t) : DiffPlan::from_term(t, parse_steps(F, o.steps));
    Sink sink(o.out);
    sink.stream() << format(delta_plan(f, plan)) << "\n";
    return kOk;
}

// --- degree-bound -------------------------------------------------------------

int cmd_degree_bound(const Options& o) {
    const Field F = Field::parse(o.field);
    if (o.k == 0) throw InvalidArgument("k must be positive");
    const auto b = degree_after_diff(o.d, o.k, F.characteristic());
    Sink sink(o.out);
    if (b.identically_zero) {
        sink.stream() << "zero\n";
    } else {
        sink.stream() << b.degree << "\n";
    }
    return kOk;
}

// --- gen-target ---------------------------------------------------------------

int cmd_gen_target(const Options& o) {
    TargetSpec spec;
    const Field F = Field::parse(o.field);
    if (!F.is_prime_field()) throw InvalidArgument("attack targets live over prime fields");
    spec.p = F.characteristic();
    spec.seed = o.seed;
    if (o.kind == "planted") {
        spec.kind = TargetSpec::Kind::planted;
        spec.n_pub = o.n_pub;
        spec.n_sec = o.n_sec;
        spec.profile = {o.degree, o.maxterms, o.noise};
    } else if (o.kind == "toy") {
        spec.kind = TargetSpec::Kind::toy;
        spec.toy = {spec.p, o.width, o.rounds, o.seed};
    } else {
        throw InvalidArgument("unknown target kind '" + o.kind + "'");
    }
    const Target built = build_target(spec);  // validates the profile
    std::vector<std::uint64_t> key;
    for (auto v : built.key) key.push_back(v.code);
    spec.key = key;
    Sink sink(o.out);
    write_target(sink.stream(), spec, !o.no_key);
    return kOk;
}

// --- attack-pre ---------------------------------------------------------------

TargetSpec load_target(const std::string& path) {
    std::istringstream in(slurp(path));
    return parse_target(in);
}

int cmd_attack_pre(const Options& o) {
    const Target t = build_target(load_target(o.target));
    const BlackBox& bb = *t.box;
    PreprocessOptions opt;
    opt.budget = o.budget;
    opt.trials = o.trials;
    opt.seed = o.seed;
    opt.jobs = o.jobs;
    const auto res = preprocess(bb, opt);
    if (res.rank != res.records.size() || res.rank > bb.secret_count()) {
        throw InvariantViolation("record count does not match the rank");
    }
    Sink sink(o.out);
    write_records(sink.stream(), bb.field(), o.seed, bb.public_count(), bb.secret_count(), res.records);
    std::ostream& log = sink.to_file() ? std::cout : std::cerr;
    log << "# fdcube attack-pre seed=" << o.seed << " budget=" << o.budget << "\n"
        << "terms_tried=" << res.terms_tried << " evaluations=" << res.evaluations << " rank=" << res.rank << "/"
        << bb.secret_count() << " status=" << to_string(res.status) << "\n";
    return res.status == PreprocessStatus::full_rank ? kOk : kNoFullRank;
}

// --- attack-online ------------------------------------------------------------

int cmd_attack_online(const Options& o) {
    const TargetSpec spec = load_target(o.target);
    const Target t = build_target(spec);
    const BlackBox& bb = *t.box;
    std::istringstream in(slurp(o.records));
    const RecordFile rf = read_records(in);
    if (rf.field && !(*rf.field == bb.field())) throw InvalidArgument("records are over a different field");
    if (rf.n_pub != bb.public_count() || rf.n_sec != bb.secret_count()) {
        throw InvalidArgument("records do not match the target's dimensions");
    }
    const auto res = online(bb, t.key, rf.records);
    const Field& F = bb.field();
    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << "# fdcube attack-online seed=" << rf.seed << " records=" << rf.records.size() << "\n";
    os << "rank=" << res.rank() << "/" << bb.secret_count() << " evaluations=" << res.evaluations << "\n";
    if (res.inconsistent_record) {
        os << "inconsistent record " << *res.inconsistent_record << "\n";
        return kInvariant;
    }
    const auto join = [&](const std::vector<Elem>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + F.format(v[i]);
        return s;
    };
    if (!res.key) {
        os << "partial=" << join(res.solution.particular) << " free=";
        for (std::size_t i = 0; i < res.solution.free_variables.size(); ++i) {
            os << (i ? "," : "") << "x" << res.solution.free_variables[i] + 1;
        }
        os << "\n";
        return kNoFullRank;
    }
    os << "key=" << join(*res.key) << "\n";
    // the target file carries the ground truth; a unique wrong solution means a false maxterm
    const bool match = *res.key == t.key;
    os << "match=" << (match ? "yes" : "no") << "\n";
    return match ? kOk : kInvariant;
}

// --- verify -------------------------------------------------------------------

auto wrap(const MultiPoly& f) {
    return [ev = PolyEvaluator(f)](std::span<const Elem> x) { return ev(x); };
}

bool verify_duality(Rng& rng, std::uint64_t count) {
    const std::uint64_t primes[] = {3, 5, 31};
    for (std::uint64_t it = 0; it < count; ++it) {
        const Field F = Field::prime(primes[it % 3]);
        const std::size_t n = 1 + rng.below(4);
        const auto f = random_poly(F, n, 6, 1 + rng.below(12), rng.next());
        Monomial t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint32_t>(rng.below(std::min<std::uint64_t>(F.order(), 4)));
        if (t.is_constant()) t[rng.below(n)] = 1;
        std::vector<Elem> steps;
        for (std::uint64_t k = 0; k < t.total_degree(); ++k) steps.push_back(random_element(F, rng, true));
        const DiffPlan plan = DiffPlan::from_term(t, steps);
        std::vector<Elem> base(n);
        for (auto& v : base) v = random_element(F, rng);
        if (blackbox_diff(wrap(f), F, plan, base) != delta_plan(f, plan).evaluate(base)) return false;
    }
    return true;
}

bool verify_constants(Rng& rng, std::uint64_t count) {
    for (std::uint64_t it = 0; it < count; ++it) {
        const Field F = Field::prime(it % 2 ? 31 : 5);
        const std::size_t n = 2 + rng.below(3);
        const auto f = random_poly(F, n, 8, 4 + rng.below(10), rng.next());
        Monomial t(n);
        for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint32_t>(rng.below(4));
        if (t.is_constant()) t[rng.below(n)] = 1;
        const auto sum = fundamental_sum(fundamental_constants(t, factor_term(f, t).quotient), F, n);
        std::vector<Elem> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = t[i] ? F.zero() : random_element(F, rng);
        if (blackbox_diff(wrap(f), F, DiffPlan::from_term(F, t), u) != sum.evaluate(u)) return false;
    }
    return true;
}

bool verify_reduction_sampled(Rng& rng, std::uint64_t count) {
    for (std::uint64_t it = 0; it < count; ++it) {
        const Field F = Field::parse(it % 2 ? "9" : "4");
        const std::size_t n = 1 + rng.below(2);
        const ProjectionContext ctx(F, n);
        const auto f = random_poly(F, n, 2 * F.order(), 8, rng.next());
        std::vector<std::uint64_t> r(F.degree());
        for (auto& v : r) v = rng.below(F.characteristic());
        ReductionOptions opt;
        opt.var = rng.below(n);
        opt.exhaustive_limit = 0;
        opt.samples = 20;
        opt.seed = rng.next();
        if (!verify_reduction(ctx, wrap(f), r, opt).ok()) return false;
    }
    return true;
}

int cmd_verify(const Options& o) {
    const std::uint64_t count = o.trials ? o.trials : 100;
    Sink sink(o.out);
    std::ostream& os = sink.stream();
    os << "# fdcube verify seed=" << o.seed << " count=" << count << "\n";
    const std::pair<const char*, bool (*)(Rng&, std::uint64_t)> checks[] = {
        {"duality", verify_duality},
        {"fundamental-constants", verify_constants},
        {"reduction", verify_reduction_sampled},
    };
    bool all = true;
    for (std::size_t i = 0; i < std::size(checks); ++i) {
        const auto& [name, fn] = checks[i];
        Rng child(derive_seed(o.seed, i));
        const bool ok = fn(child, count);
        all = all && ok;
        os << (ok ? "PASS " : "FAIL ") << name << "\n";
    }
    return all ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fdcube: finite differences and cube attacks over finite fields"};
    app.require_subcommand(1);
    Options o;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--field", o.field, "field: p, q = p^m, or p^m/c_m,...,c_0")->capture_default_str();
        sub->add_option("--out", o.out, "write the result to this file");
    };
    const auto seeded = [&](CLI::App* sub) { sub->add_option("--seed", o.seed, "random seed")->capture_default_str(); };

    auto* diff = app.add_subcommand("diff", "differentiate a polynomial along a cube term");
    common(diff);
    diff->add_option("--plan", o.plan, "cube term, e.g. x1^2*x3")->required();
    diff->add_option("--steps", o.steps, "comma-separated steps, one per differentiation");
    diff->add_option("poly", o.poly, "polynomial text, or @file")->required();

    auto* bound = app.add_subcommand("degree-bound", "degree of x^d after k differentiations");
    common(bound);
    bound->add_option("d", o.d, "exponent")->required();
    bound->add_option("k", o.k, "number of differentiations")->required();

    auto* gen = app.add_subcommand("gen-target", "write a target description");
    common(gen);
    seeded(gen);
    gen->add_option("--kind", o.kind, "planted or toy")->capture_default_str();
    gen->add_option("--n-pub", o.n_pub, "public variables (planted)")->capture_default_str();
    gen->add_option("--n-sec", o.n_sec, "secret variables (planted)")->capture_default_str();
    gen->add_option("--degree", o.degree, "total degree (planted)")->capture_default_str();
    gen->add_option("--maxterms", o.maxterms, "planted maxterms, 0 = n_sec + 2")->capture_default_str();
    gen->add_option("--noise", o.noise, "noise monomials (planted)")->capture_default_str();
    gen->add_option("--width", o.width, "state width (toy)")->capture_default_str();
    gen->add_option("--rounds", o.rounds, "rounds (toy)")->capture_default_str();
    gen->add_flag("--no-key", o.no_key, "omit the key line");

    auto* pre = app.add_subcommand("attack-pre", "preprocessing: find independent maxterms");
    pre->add_option("--out", o.out, "record file");
    seeded(pre);
    pre->add_option("--budget", o.budget, "black-box evaluation budget")->capture_default_str();
    pre->add_option("--trials", o.trials, "linearity trials, 0 = default");
    pre->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    pre->add_option("target", o.target, "target file")->required();

    auto* onl = app.add_subcommand("attack-online", "online phase: solve for the key");
    onl->add_option("--out", o.out, "report file");
    onl->add_option("target", o.target, "target file")->required();
    onl->add_option("records", o.records, "record file")->required();

    auto* ver = app.add_subcommand("verify", "seeded property checks");
    ver->add_option("--out", o.out, "report file");
    seeded(ver);
    ver->add_option("--trials", o.trials, "instances per property, 0 = 100");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*diff) return cmd_diff(o);
        if (*bound) return cmd_degree_bound(o);
        if (*gen) return cmd_gen_target(o);
        if (*pre) return cmd_attack_pre(o);
        if (*onl) return cmd_attack_online(o);
        if (*ver) return cmd_verify(o);
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInvariant;
    } catch (const fdcube::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInvariant;
    }
    return kInputError;
}
