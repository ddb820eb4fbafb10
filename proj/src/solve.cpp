#include "trendsolve/solve.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "trendsolve/error.hpp"

namespace trendsolve {

namespace {

// A domain element is a (d1, d2) pair encoded as d1*3 + d2 in full mode
// and a bare d1 in first-order mode; ascending codes follow the
// canonical sign order, so in-order search yields sorted output.
using DomainMask = std::uint16_t;

int effective_threads(const SolveOptions& opts) {
#ifdef _OPENMP
    if (opts.threads > 0) return opts.threads;
    return omp_get_max_threads();
#else
    (void)opts;
    return 1;
#endif
}

class Search {
public:
    Search(const TrendModel& model, Mode mode)
        : cm_(compile(model, mode)),
          n_(cm_.variables.size()),
          states_(mode == Mode::Full ? 9 : 3) {
        for (const CompiledRelation& r : cm_.relations) {
            pair_allowed_.emplace_back();
            auto& table = pair_allowed_.back();
            for (int px = 0; px < states_; ++px)
                for (int py = 0; py < states_; ++py)
                    table[px][py] = relation_compatible(r, px, py);
        }
    }

    int state_count() const { return states_; }
    std::size_t variable_count() const { return n_; }

    Sign d1_of(int state) const {
        return static_cast<Sign>(cm_.mode == Mode::Full ? state / 3 : state);
    }
    SignSet d2_of(int state) const {
        if (cm_.mode != Mode::Full) return SignSet::full();
        return SignSet(static_cast<Sign>(state % 3));
    }

    Scenario make_scenario(const std::vector<int>& states) const {
        Scenario s;
        s.triplets.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i)
            s.triplets.push_back(Triplet{cm_.variables[i].value_sign,
                                         d1_of(states[i]), d2_of(states[i])});
        return s;
    }

    // Depth-first enumeration below a fixed prefix assignment. `domains`
    // must already be consistent with the prefix.
    void enumerate(std::vector<DomainMask> domains, std::size_t level,
                   std::vector<int>& states, std::vector<Scenario>& out) const {
        if (level == n_) {
            out.push_back(make_scenario(states));
            return;
        }
        DomainMask mask = domains[level];
        for (int p = 0; p < states_; ++p) {
            if (!(mask & (DomainMask(1) << p))) continue;
            std::vector<DomainMask> next = domains;
            next[level] = DomainMask(1) << p;
            if (!propagate(next)) continue;
            states[level] = p;
            enumerate(next, level + 1, states, out);
        }
    }

    // Arc consistency over relation constraints plus a relaxed
    // zero-inclusion test of every equation; false means some domain
    // emptied or an equation cannot reach zero.
    bool propagate(std::vector<DomainMask>& domains) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t k = 0; k < cm_.relations.size(); ++k) {
                const CompiledRelation& r = cm_.relations[k];
                if (revise(domains, r.src, r.dst, k, true)) changed = true;
                if (domains[r.src] == 0) return false;
                if (revise(domains, r.dst, r.src, k, false)) changed = true;
                if (domains[r.dst] == 0) return false;
            }
        }
        for (const CompiledSum& sum : cm_.sums)
            if (!sum_can_reach_zero(sum, domains)) return false;
        return true;
    }

    std::vector<DomainMask> full_domains() const {
        return std::vector<DomainMask>(n_, DomainMask((1u << states_) - 1));
    }

    bool exact_check(const std::vector<int>& states) const {
        for (std::size_t k = 0; k < cm_.relations.size(); ++k) {
            const CompiledRelation& r = cm_.relations[k];
            if (!pair_allowed_[k][states[r.src]][states[r.dst]]) return false;
        }
        for (const CompiledSum& sum : cm_.sums) {
            SignSet acc(Sign::Zero);
            for (const CompiledMonomial& m : sum.monomials) {
                SignSet v(m.coeff);
                for (const SlotRef& ref : m.refs)
                    v = qmul(v, slot_set(ref, states[ref.var]));
                acc = qadd(acc, v);
                if (acc.is_full()) break;
            }
            if (!acc.contains(Sign::Zero)) return false;
        }
        return true;
    }

private:
    bool relation_compatible(const CompiledRelation& r, int px, int py) const {
        Sign d1x = static_cast<Sign>(cm_.mode == Mode::Full ? px / 3 : px);
        Sign d1y = static_cast<Sign>(cm_.mode == Mode::Full ? py / 3 : py);
        if (SignSet(d1y) != qmul(SignSet(r.s1), SignSet(d1x))) return false;
        if (cm_.mode == Mode::Full) {
            SignSet d2x(static_cast<Sign>(px % 3));
            SignSet d2y(static_cast<Sign>(py % 3));
            SignSet allowed = qadd(qmul(SignSet(r.s2), SignSet(qsquare(d1x))),
                                   qmul(SignSet(r.s1), d2x));
            if (!d2y.subset_of(allowed)) return false;
        }
        return true;
    }

    bool revise(std::vector<DomainMask>& domains, std::size_t var,
                std::size_t other, std::size_t rel, bool var_is_src) const {
        const auto& table = pair_allowed_[rel];
        DomainMask kept = 0;
        for (int p = 0; p < states_; ++p) {
            if (!(domains[var] & (DomainMask(1) << p))) continue;
            bool supported = false;
            for (int q = 0; q < states_ && !supported; ++q) {
                if (!(domains[other] & (DomainMask(1) << q))) continue;
                supported = var_is_src ? table[p][q] : table[q][p];
            }
            if (supported) kept |= DomainMask(1) << p;
        }
        if (kept == domains[var]) return false;
        domains[var] = kept;
        return true;
    }

    SignSet slot_set(const SlotRef& ref, int state) const {
        switch (ref.slot) {
            case Factor::Slot::Value:
                return SignSet(cm_.variables[ref.var].value_sign);
            case Factor::Slot::D1: return SignSet(d1_of(state));
            case Factor::Slot::D2: return d2_of(state);
        }
        return SignSet::full();
    }

    SignSet slot_domain(const SlotRef& ref, DomainMask mask) const {
        if (ref.slot == Factor::Slot::Value)
            return SignSet(cm_.variables[ref.var].value_sign);
        SignSet out = SignSet::empty_set();
        for (int p = 0; p < states_; ++p)
            if (mask & (DomainMask(1) << p))
                out |= ref.slot == Factor::Slot::D1 ? SignSet(d1_of(p)) : d2_of(p);
        return out;
    }

    // Sound relaxation: evaluate each slot over its remaining domain.
    bool sum_can_reach_zero(const CompiledSum& sum,
                            const std::vector<DomainMask>& domains) const {
        SignSet acc(Sign::Zero);
        for (const CompiledMonomial& m : sum.monomials) {
            SignSet v(m.coeff);
            for (const SlotRef& ref : m.refs) {
                v = qmul(v, slot_domain(ref, domains[ref.var]));
                if (v == SignSet(Sign::Zero)) break;
            }
            acc = qadd(acc, v);
            if (acc.is_full()) return true;
        }
        return acc.contains(Sign::Zero);
    }

    CompiledModel cm_;
    std::size_t n_;
    int states_;
    std::vector<std::array<std::array<bool, 9>, 9>> pair_allowed_;
};

ScenarioSet finalize(const TrendModel& model, Mode mode,
                     std::vector<Scenario> scenarios) {
    ScenarioSet out;
    out.mode = mode;
    for (const Variable& v : model.variables) out.variables.push_back(v.name);
    out.scenarios = std::move(scenarios);
    std::sort(out.scenarios.begin(), out.scenarios.end(),
              [](const Scenario& a, const Scenario& b) {
                  return a.triplets < b.triplets;
              });
    for (std::size_t i = 0; i < out.scenarios.size(); ++i)
        out.scenarios[i].id = static_cast<int>(i) + 1;
    return out;
}

}  // namespace

ScenarioSet solve(const TrendModel& model, Mode mode, const SolveOptions& opts) {
    Search search(model, mode);
    std::size_t n = search.variable_count();

    std::vector<Scenario> found;
    if (n == 0) {
        found.push_back(Scenario{});
        return finalize(model, mode, std::move(found));
    }

    std::vector<DomainMask> root = search.full_domains();
    if (!search.propagate(root)) return finalize(model, mode, {});

    int threads = effective_threads(opts);
    int states = search.state_count();
    if (threads <= 1) {
        std::vector<int> assignment(n, 0);
        search.enumerate(root, 0, assignment, found);
        return finalize(model, mode, std::move(found));
    }

    // Split the search tree on the first variable; branch results are
    // concatenated in branch order, so scheduling cannot reorder output.
    std::vector<std::vector<Scenario>> branches(states);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (int p = 0; p < states; ++p) {
        if (!(root[0] & (DomainMask(1) << p))) continue;
        std::vector<DomainMask> domains = root;
        domains[0] = DomainMask(1) << p;
        if (!search.propagate(domains)) continue;
        std::vector<int> assignment(n, 0);
        assignment[0] = p;
        search.enumerate(domains, 1, assignment, branches[p]);
    }
    for (auto& branch : branches)
        found.insert(found.end(), branch.begin(), branch.end());
    return finalize(model, mode, std::move(found));
}

ScenarioSet brute_force_solve(const TrendModel& model, Mode mode,
                              const SolveOptions& opts) {
    if (model.variables.size() > opts.brute_force_cap)
        throw SemanticError("brute-force enumeration is capped at " +
                            std::to_string(opts.brute_force_cap) +
                            " variables, model has " +
                            std::to_string(model.variables.size()));
    Search search(model, mode);
    std::size_t n = search.variable_count();

    if (n == 0)
        return finalize(model, mode, {Scenario{}});

    int states = search.state_count();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(states);

    auto decode = [&](std::uint64_t idx, std::vector<int>& assignment) {
        for (std::size_t i = n; i-- > 0;) {
            assignment[i] = static_cast<int>(idx % states);
            idx /= states;
        }
    };

    int threads = effective_threads(opts);
    if (threads <= 1) {
        std::vector<Scenario> found;
        std::vector<int> assignment(n, 0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            decode(idx, assignment);
            if (search.exact_check(assignment))
                found.push_back(search.make_scenario(assignment));
        }
        return finalize(model, mode, std::move(found));
    }

    std::uint64_t chunk_count = std::min<std::uint64_t>(total,
                                                        std::uint64_t(threads) * 8);
    std::uint64_t chunk_size = (total + chunk_count - 1) / chunk_count;
    std::vector<std::vector<Scenario>> chunks(chunk_count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunk_count); ++c) {
        std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
        std::uint64_t end = std::min(total, begin + chunk_size);
        std::vector<int> assignment(n, 0);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            decode(idx, assignment);
            if (search.exact_check(assignment))
                chunks[c].push_back(search.make_scenario(assignment));
        }
    }
    std::vector<Scenario> found;
    for (auto& chunk : chunks)
        found.insert(found.end(), chunk.begin(), chunk.end());
    return finalize(model, mode, std::move(found));
}

}  // namespace trendsolve
