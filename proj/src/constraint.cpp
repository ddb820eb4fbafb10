#include "trendsolve/constraint.hpp"

#include "trendsolve/error.hpp"
#include "trendsolve/model_io.hpp"

namespace trendsolve {

namespace {

Factor derive_factor(const Factor& f) {
    switch (f.slot) {
        case Factor::Slot::Value: return Factor{Factor::Slot::D1, f.var};
        case Factor::Slot::D1: return Factor{Factor::Slot::D2, f.var};
        case Factor::Slot::D2:
            throw SemanticError("cannot differentiate D2 factor of '" + f.var +
                                "'; third derivatives are not modelled");
    }
    throw SemanticError("bad factor");
}

std::vector<Monomial> derive_sum(const std::vector<Monomial>& sum) {
    std::vector<Monomial> out;
    for (const Monomial& m : sum) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            Monomial d;
            d.coeff = m.coeff;
            d.factors = m.factors;
            d.factors[i] = derive_factor(m.factors[i]);
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::size_t resolve(const TrendModel& model, const std::string& name,
                    const std::string& context) {
    auto idx = model.index_of(name);
    if (!idx)
        throw SemanticError("unknown variable '" + name + "' in " + context);
    return *idx;
}

CompiledSum compile_sum(const TrendModel& model, const TrendEquation& eq,
                        bool derived) {
    CompiledSum out;
    out.label = render_equation(eq);
    out.derived = derived;
    auto add_side = [&](const std::vector<Monomial>& side, bool negate_side) {
        for (const Monomial& m : side) {
            CompiledMonomial cm;
            cm.coeff = negate_side ? negate(m.coeff) : m.coeff;
            for (const Factor& f : m.factors)
                cm.refs.push_back(SlotRef{f.slot, resolve(model, f.var, out.label)});
            out.monomials.push_back(std::move(cm));
        }
    };
    add_side(eq.lhs, false);
    add_side(eq.rhs, true);
    return out;
}

SignSet slot_value(const Scenario& s, const SlotRef& ref) {
    const Triplet& t = s.triplets[ref.var];
    switch (ref.slot) {
        case Factor::Slot::Value: return SignSet(t.value);
        case Factor::Slot::D1: return SignSet(t.d1);
        case Factor::Slot::D2: return t.d2;
    }
    return SignSet::full();
}

SignSet eval_sum(const CompiledSum& sum, const Scenario& s) {
    SignSet acc(Sign::Zero);
    for (const CompiledMonomial& m : sum.monomials) {
        SignSet v(m.coeff);
        for (const SlotRef& ref : m.refs) {
            v = qmul(v, slot_value(s, ref));
            if (v == SignSet(Sign::Zero)) break;
        }
        acc = qadd(acc, v);
        if (acc.is_full()) break;
    }
    return acc;
}

}  // namespace

TrendEquation differentiate(const TrendEquation& eq) {
    if (eq.order() > 1)
        throw SemanticError("cannot differentiate an order-2 equation: " +
                            render_equation(eq));
    TrendEquation out;
    out.lhs = derive_sum(eq.lhs);
    out.rhs = derive_sum(eq.rhs);
    return out;
}

CompiledModel compile(const TrendModel& model, Mode mode) {
    CompiledModel cm;
    cm.mode = mode;
    cm.variables = model.variables;

    for (const TrendRelation& rel : model.relations) {
        CompiledRelation cr;
        cr.s1 = rel.s1;
        cr.s2 = rel.s2;
        cr.label = render_relation(rel);
        cr.src = resolve(model, rel.source, cr.label);
        cr.dst = resolve(model, rel.target, cr.label);
        if (cr.src == cr.dst)
            throw SemanticError(cr.label + ": a variable cannot relate to itself");
        for (std::size_t idx : {cr.src, cr.dst})
            if (model.variables[idx].value_sign != Sign::Pos)
                throw SemanticError(cr.label + ": variable '" +
                                    model.variables[idx].name +
                                    "' must be positive-valued to appear in a relation");
        cm.relations.push_back(std::move(cr));
    }

    for (const TrendEquation& eq : model.equations) {
        int order = eq.order();
        if (mode == Mode::FirstOrder && order == 2) continue;
        cm.sums.push_back(compile_sum(model, eq, false));
        if (mode == Mode::Full && order <= 1)
            cm.sums.push_back(compile_sum(model, differentiate(eq), true));
    }
    return cm;
}

std::vector<std::string> scenario_violations(const CompiledModel& cm,
                                             const Scenario& s) {
    std::vector<std::string> out;
    if (s.triplets.size() != cm.variables.size())
        throw SemanticError("scenario does not cover the model's variables");

    for (std::size_t i = 0; i < cm.variables.size(); ++i)
        if (s.triplets[i].value != cm.variables[i].value_sign)
            out.push_back("variable " + cm.variables[i].name + " has value sign '" +
                          std::string(1, sign_char(s.triplets[i].value)) +
                          "' but is declared '" +
                          std::string(1, sign_char(cm.variables[i].value_sign)) + "'");

    for (const CompiledRelation& r : cm.relations) {
        const Triplet& tx = s.triplets[r.src];
        const Triplet& ty = s.triplets[r.dst];
        if (ty.d1 != qmul(SignSet(r.s1), SignSet(tx.d1)).single())
            out.push_back(r.label + " [d1]");
        if (cm.mode == Mode::Full) {
            SignSet allowed = qadd(qmul(SignSet(r.s2), SignSet(qsquare(tx.d1))),
                                   qmul(SignSet(r.s1), tx.d2));
            if (!ty.d2.subset_of(allowed)) out.push_back(r.label + " [d2]");
        }
    }

    for (const CompiledSum& sum : cm.sums) {
        if (!eval_sum(sum, s).contains(Sign::Zero))
            out.push_back(sum.label + (sum.derived ? " [differentiated]" : ""));
    }
    return out;
}

bool satisfies(const CompiledModel& cm, const Scenario& s) {
    return scenario_violations(cm, s).empty();
}

}  // namespace trendsolve
