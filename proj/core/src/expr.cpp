#include "tracktor/expr.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace tracktor {

// --- label interning --------------------------------------------------------

namespace {
struct LabelTable {
    std::mutex mu;
    std::unordered_map<std::string, int32_t> ids;
    std::vector<std::string> names{""};  // id 0 unused
};
LabelTable& labels() {
    static LabelTable t;
    return t;
}
}  // namespace

int32_t intern_label(const std::string& name) {
    auto& t = labels();
    std::lock_guard<std::mutex> lk(t.mu);
    auto it = t.ids.find(name);
    if (it != t.ids.end()) return it->second;
    int32_t id = static_cast<int32_t>(t.names.size());
    t.names.push_back(name);
    t.ids.emplace(name, id);
    return id;
}

const std::string& label_name(int32_t id) {
    auto& t = labels();
    std::lock_guard<std::mutex> lk(t.mu);
    return t.names.at(static_cast<size_t>(id));
}

std::string index_str(const Index& ix) {
    std::string s = ix.up ? "+" : "-";
    if (ix.is_dummy()) {
        s += (ix.kind == IndexKind::Tractor ? "%T" : "%");
        s += std::to_string(-ix.label);
    } else {
        s += label_name(ix.label);
    }
    return s;
}

// --- atom catalog -----------------------------------------------------------

namespace {

std::vector<SignedPerm> close_group(std::vector<SignedPerm> gens, size_t nslots) {
    std::vector<int> id(nslots);
    for (size_t i = 0; i < nslots; ++i) id[i] = static_cast<int>(i);
    std::vector<SignedPerm> group{{id, 1}};
    auto compose = [&](const SignedPerm& a, const SignedPerm& b) {
        SignedPerm c;
        c.perm.resize(nslots);
        for (size_t i = 0; i < nslots; ++i) c.perm[i] = a.perm[b.perm[i]];
        c.sign = a.sign * b.sign;
        return c;
    };
    auto contains = [&](const SignedPerm& p) {
        for (const auto& q : group)
            if (q.perm == p.perm) return true;
        return false;
    };
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t i = 0; i < group.size(); ++i)
            for (const auto& g : gens) {
                SignedPerm c = compose(g, group[i]);
                if (!contains(c)) {
                    group.push_back(c);
                    grew = true;
                }
            }
    }
    return group;
}

std::vector<AtomKindInfo> make_catalog() {
    using K = IndexKind;
    std::vector<AtomKindInfo> cat(kind::FirstSection);

    auto sym2 = close_group({{{1, 0}, 1}}, 2);
    auto anti_pairs = close_group({{{1, 0, 2, 3}, -1}, {{0, 1, 3, 2}, -1}}, 4);
    auto riemann = close_group({{{1, 0, 2, 3}, -1}, {{0, 1, 3, 2}, -1}, {{2, 3, 0, 1}, 1}}, 4);

    cat[kind::Metric] = {"g", {K::Tensor, K::Tensor}, Weight(2), true, false, sym2};
    cat[kind::TracMetric] = {"h", {K::Tractor, K::Tractor}, Weight(0), true, false, sym2};
    cat[kind::Schouten] = {"P", {K::Tensor, K::Tensor}, Weight(0), false, false, sym2};
    cat[kind::JScalar] = {"J", {}, Weight(-2), false, false, close_group({}, 0)};
    cat[kind::Weyl] = {"C", {K::Tensor, K::Tensor, K::Tensor, K::Tensor}, Weight(2),
                       false, true, riemann};
    cat[kind::Riemann] = {"R", {K::Tensor, K::Tensor, K::Tensor, K::Tensor}, Weight(2),
                          false, false, riemann};
    cat[kind::X] = {"X", {K::Tractor}, Weight(1), false, false, close_group({}, 1)};
    cat[kind::Y] = {"Y", {K::Tractor}, Weight(-1), false, false, close_group({}, 1)};
    cat[kind::Z] = {"Z", {K::Tractor, K::Tensor}, Weight(1), false, false, close_group({}, 2)};
    cat[kind::W] = {"W", {K::Tractor, K::Tractor, K::Tractor, K::Tractor}, Weight(-2),
                    false, true, riemann};
    cat[kind::OmegaTr] = {"OmT", {K::Tractor, K::Tractor, K::Tractor, K::Tractor},
                          Weight(-2), false, false, anti_pairs};
    cat[kind::OmegaMx] = {"Om", {K::Tensor, K::Tensor, K::Tractor, K::Tractor},
                          Weight(0), false, false, anti_pairs};
    return cat;
}

struct Catalog {
    std::mutex mu;
    std::vector<AtomKindInfo> kinds = make_catalog();
    std::unordered_map<std::string, int> sections;
};
Catalog& catalog() {
    static Catalog c;
    return c;
}

}  // namespace

const AtomKindInfo& kind_info(int id) {
    auto& c = catalog();
    std::lock_guard<std::mutex> lk(c.mu);
    return c.kinds.at(static_cast<size_t>(id));
}

int kind_count() {
    auto& c = catalog();
    std::lock_guard<std::mutex> lk(c.mu);
    return static_cast<int>(c.kinds.size());
}

int register_section(const std::string& name, std::vector<IndexKind> slots, Weight weight,
                     bool parallel) {
    auto& c = catalog();
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.sections.find(name);
    if (it != c.sections.end()) {
        AtomKindInfo& k = c.kinds[static_cast<size_t>(it->second)];
        // Test suites re-register symbols with varying weights; allow updating
        // a section's weight/flags as long as the signature agrees.
        if (k.slots != slots)
            throw std::runtime_error("section re-registered with different signature: " + name);
        k.base = weight;
        k.parallel = parallel;
        return it->second;
    }
    AtomKindInfo info;
    info.name = name;
    info.base = weight;
    info.parallel = parallel;
    size_t ns = slots.size();
    info.slots = std::move(slots);
    info.symmetry = close_group({}, ns);
    c.kinds.push_back(std::move(info));
    int id = static_cast<int>(c.kinds.size()) - 1;
    c.sections.emplace(name, id);
    return id;
}

int find_section(const std::string& name) {
    auto& c = catalog();
    std::lock_guard<std::mutex> lk(c.mu);
    auto it = c.sections.find(name);
    return it == c.sections.end() ? -1 : it->second;
}

Weight atom_weight(const Atom& a) {
    const AtomKindInfo& k = kind_info(a.kind);
    Weight w = k.base;
    for (const Index& ix : a.idx)
        if (ix.kind == IndexKind::Tensor && ix.up) w = w + Weight(-2);
    for (const Index& ix : a.derivs)
        if (ix.up) w = w + Weight(-2);
    return w;
}

std::string atom_str(const Atom& a) {
    std::ostringstream os;
    for (const Index& d : a.derivs) os << "nabla[" << index_str(d) << "](";
    os << kind_info(a.kind).name;
    if (!a.idx.empty()) {
        os << "[";
        for (size_t i = 0; i < a.idx.size(); ++i) {
            if (i) os << ",";
            os << index_str(a.idx[i]);
        }
        os << "]";
    }
    for (size_t i = 0; i < a.derivs.size(); ++i) os << ")";
    return os.str();
}

// --- term/expr basics -------------------------------------------------------

namespace {

template <typename F>
void for_each_index(Term& t, F&& f) {
    for (Node& nd : t.body) {
        if (auto* at = std::get_if<Atom>(&nd)) {
            for (Index& ix : at->derivs) f(ix);
            for (Index& ix : at->idx) f(ix);
        } else if (auto* nb = std::get_if<NablaNode>(&nd)) {
            f(nb->a);
        } else if (auto* d = std::get_if<DNode>(&nd)) {
            f(d->A);
        } else if (auto* dd = std::get_if<DoubleDNode>(&nd)) {
            f(dd->A);
            f(dd->P);
        }
    }
}

template <typename F>
void for_each_index_const(const Term& t, F&& f) {
    for_each_index(const_cast<Term&>(t), [&](Index& ix) { f(static_cast<const Index&>(ix)); });
}

}  // namespace

void check_indices(const Term& t) {
    struct Occ {
        int count = 0;
        int ups = 0;
    };
    // Dummy ids are a per-kind namespace, so the key includes the kind; a
    // named (free) label reused with two kinds is still an error.
    std::map<std::pair<int32_t, IndexKind>, Occ> occ;
    for_each_index_const(t, [&](const Index& ix) {
        if (ix.label > 0) {
            auto other = ix.kind == IndexKind::Tensor ? IndexKind::Tractor : IndexKind::Tensor;
            if (occ.count({ix.label, other}))
                throw IndexError("label used with two different index kinds");
        }
        auto& o = occ[{ix.label, ix.kind}];
        o.count++;
        o.ups += ix.up ? 1 : 0;
    });
    for (auto& [key, o] : occ) {
        if (o.count == 1) {
            if (key.first < 0)
                throw IndexError("dummy label occurs once");
        } else if (o.count == 2) {
            if (o.ups != 1) throw IndexError("contracted pair must be one up, one down");
        } else {
            throw IndexError("label occurs more than twice");
        }
    }
}

Term renumber_dummies(const Term& t) {
    // Labels occurring twice are contractions (whether user-named or already
    // in the dummy namespace); renumber them left-to-right.
    std::map<std::pair<int32_t, IndexKind>, int> count;
    for_each_index_const(t, [&](const Index& ix) { count[{ix.label, ix.kind}]++; });
    Term r = t;
    std::map<std::pair<int32_t, IndexKind>, int32_t> remap;
    // Start above any dummy id we are not renumbering, so that dangling
    // dummies (links to a host term during substitution) are never captured.
    int32_t next = 1;
    for (const auto& [key, c] : count)
        if (key.first < 0 && c != 2) next = std::max(next, 1 - key.first);
    for_each_index(r, [&](Index& ix) {
        if (count[{ix.label, ix.kind}] == 2) {
            auto key = std::make_pair(ix.label, ix.kind);
            auto it = remap.find(key);
            if (it == remap.end()) it = remap.emplace(key, next++).first;
            ix.label = -it->second;
        }
    });
    return r;
}

int32_t max_dummy(const Term& t) {
    int32_t m = 0;
    for_each_index_const(t, [&](const Index& ix) {
        if (ix.is_dummy()) m = std::max(m, -ix.label);
    });
    return m;
}

Expr operator+(const Expr& a, const Expr& b) {
    Expr r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return merge(r);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (DimRational(-1) * b); }

Expr operator*(const DimRational& c, const Expr& e) {
    if (c.is_zero()) return Expr::zero();
    Expr r = e;
    for (Term& t : r.terms) t.coeff = t.coeff * c;
    return r;
}

Expr multiply(const Expr& a, const Expr& b) {
    Expr r;
    for (const Term& ta : a.terms)
        for (const Term& tb : b.terms) {
            Term t;
            t.coeff = ta.coeff * tb.coeff;
            t.body = ta.body;
            // shift tb's dummies above ta's
            int32_t shift = max_dummy(ta);
            Term tb2 = tb;
            if (shift > 0)
                for_each_index(tb2, [&](Index& ix) {
                    if (ix.is_dummy()) ix.label -= shift;
                });
            t.body.insert(t.body.end(), tb2.body.begin(), tb2.body.end());
            check_indices(t);  // catches triple occurrences of free labels
            r.terms.push_back(std::move(t));
        }
    return merge(r);
}

Expr apply_node(const Node& nd, const Expr& e) {
    Expr r;
    for (const Term& t : e.terms) {
        Term t2 = t;
        t2.body.insert(t2.body.begin(), nd);
        r.terms.push_back(std::move(t2));
    }
    return r;
}

Expr apply_chain(const std::vector<Index>& chain, const Expr& e) {
    Expr r = e;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        r = apply_node(NablaNode{*it}, r);
    return r;
}

Weight suffix_weight(const std::vector<Node>& body, size_t from) {
    Weight w;
    for (size_t i = from; i < body.size(); ++i) {
        const Node& nd = body[i];
        if (auto* at = std::get_if<Atom>(&nd)) {
            w = w + atom_weight(*at);
        } else if (auto* nb = std::get_if<NablaNode>(&nd)) {
            if (nb->a.up) w = w + Weight(-2);
        } else if (std::holds_alternative<BoxNode>(nd)) {
            w = w + Weight(-2);
        } else if (std::holds_alternative<DNode>(nd)) {
            w = w + Weight(-1);
        }
        // DoubleDNode preserves weight.
    }
    return w;
}

Weight term_weight(const Term& t) { return suffix_weight(t.body, 0); }

Weight weight_of(const Expr& e) {
    if (e.terms.empty()) return Weight();
    Weight w = term_weight(e.terms.front());
    for (const Term& t : e.terms)
        if (!(term_weight(t) == w))
            throw WeightError("inhomogeneous expression: weights " + w.str() + " vs " +
                              term_weight(t).str());
    return w;
}

Expr merge(const Expr& e) {
    std::map<std::vector<Node>, DimRational> acc;
    for (const Term& t : e.terms) {
        if (t.coeff.is_zero()) continue;
        Term n = renumber_dummies(t);
        auto it = acc.find(n.body);
        if (it == acc.end())
            acc.emplace(std::move(n.body), n.coeff);
        else
            it->second += n.coeff;
    }
    Expr r;
    for (auto& [body, c] : acc)
        if (!c.is_zero()) r.terms.emplace_back(c, body);
    return r;
}

Expr at_dimension(const Expr& e, const Rational& n0) {
    Expr r = e;
    for (Term& t : r.terms) t.coeff = DimRational(t.coeff.eval_at(n0));
    return merge(r);
}

bool fully_expanded(const Expr& e) {
    for (const Term& t : e.terms)
        for (const Node& nd : t.body)
            if (!std::holds_alternative<Atom>(nd)) return false;
    return true;
}

std::string term_str(const Term& t) {
    std::ostringstream os;
    os << t.coeff.str();
    for (const Node& nd : t.body) {
        os << " ";
        if (auto* at = std::get_if<Atom>(&nd)) os << atom_str(*at);
        else if (auto* nb = std::get_if<NablaNode>(&nd)) os << "nabla[" << index_str(nb->a) << "]";
        else if (std::holds_alternative<BoxNode>(nd)) os << "Box";
        else if (auto* d = std::get_if<DNode>(&nd)) os << "D[" << index_str(d->A) << "]";
        else if (auto* dd = std::get_if<DoubleDNode>(&nd))
            os << "DD[" << index_str(dd->A) << "," << index_str(dd->P) << "]";
    }
    return os.str();
}

std::string expr_str(const Expr& e) {
    if (e.terms.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        if (i) os << "\n+ ";
        os << term_str(e.terms[i]);
    }
    return os.str();
}

}  // namespace tracktor
