#include "internal.hpp"
#include "tracktor/tractor.hpp"

#include <map>

namespace tracktor {

namespace detail {

Term shift_dummies(Term t, int32_t shift) {
    if (shift <= 0) return t;
    for (Node& nd : t.body) {
        auto bump = [&](Index& ix) {
            if (ix.is_dummy()) ix.label -= shift;
        };
        if (auto* at = std::get_if<Atom>(&nd)) {
            for (Index& ix : at->derivs) bump(ix);
            for (Index& ix : at->idx) bump(ix);
        } else if (auto* nb = std::get_if<NablaNode>(&nd)) {
            bump(nb->a);
        } else if (auto* d = std::get_if<DNode>(&nd)) {
            bump(d->A);
        } else if (auto* dd = std::get_if<DoubleDNode>(&nd)) {
            bump(dd->A);
            bump(dd->P);
        }
    }
    return t;
}

int32_t fresh_dummy(const Term& t) { return max_dummy(t) + 1; }

namespace {
// Shift only dummies that occur twice within the term (term-local pairs).
Term shift_local_dummies(const Term& t, int32_t shift) {
    if (shift <= 0) return t;
    std::map<std::pair<int32_t, IndexKind>, int> count;
    for (const Node& nd : t.body)
        if (auto* at = std::get_if<Atom>(&nd)) {
            for (const Index& ix : at->derivs)
                if (ix.is_dummy()) count[{ix.label, ix.kind}]++;
            for (const Index& ix : at->idx)
                if (ix.is_dummy()) count[{ix.label, ix.kind}]++;
        }
    Term r = t;
    for (Node& nd : r.body)
        if (auto* at = std::get_if<Atom>(&nd)) {
            auto bump = [&](Index& ix) {
                if (ix.is_dummy() && count[{ix.label, ix.kind}] == 2) ix.label -= shift;
            };
            for (Index& ix : at->derivs) bump(ix);
            for (Index& ix : at->idx) bump(ix);
        }
    return r;
}
}  // namespace

Expr substitute_atom(const Term& t, size_t pos, const Expr& repl) {
    int32_t shift = max_dummy(t);
    Expr out;
    for (const Term& rt : repl.terms) {
        Term r = shift_local_dummies(rt, shift);
        Term nt;
        nt.coeff = t.coeff * r.coeff;
        nt.body.assign(t.body.begin(), t.body.begin() + static_cast<long>(pos));
        nt.body.insert(nt.body.end(), r.body.begin(), r.body.end());
        nt.body.insert(nt.body.end(), t.body.begin() + static_cast<long>(pos) + 1,
                       t.body.end());
        out.terms.push_back(std::move(nt));
    }
    return out;
}

}  // namespace detail

Expr leibniz_expand(const Expr& e) {
    std::vector<Term> work(e.terms.begin(), e.terms.end());
    Expr done;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        // find the last (innermost) nabla node
        size_t pos = t.body.size();
        for (size_t i = t.body.size(); i-- > 0;) {
            if (std::holds_alternative<NablaNode>(t.body[i])) {
                pos = i;
                break;
            }
            if (!std::holds_alternative<Atom>(t.body[i]))
                throw std::runtime_error("leibniz_expand: unexpanded macro node in scope");
        }
        if (pos == t.body.size()) {
            done.terms.push_back(std::move(t));
            continue;
        }
        Index a = std::get<NablaNode>(t.body[pos]).a;
        if (pos + 1 == t.body.size())
            throw std::runtime_error("leibniz_expand: derivative with empty operand");
        // distribute over the suffix atoms
        for (size_t i = pos + 1; i < t.body.size(); ++i) {
            const Atom& at = std::get<Atom>(t.body[i]);
            if (kind_info(at.kind).parallel && at.derivs.empty()) continue;  // parallel atom
            Term nt = t;
            nt.body.erase(nt.body.begin() + static_cast<long>(pos));
            Atom& target = std::get<Atom>(nt.body[i - 1]);
            target.derivs.insert(target.derivs.begin(), a);
            work.push_back(std::move(nt));
        }
        // terms where the derivative hit only parallel atoms vanish entirely
    }
    return merge(done);
}

}  // namespace tracktor
