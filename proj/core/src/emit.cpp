#include "tracktor/emit.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace tracktor {

namespace {

const char* kind_token(int k) {
    switch (k) {
        case kind::Metric: return "g";
        case kind::TracMetric: return "h";
        case kind::Schouten: return "P";
        case kind::JScalar: return "J";
        case kind::Weyl: return "C";
        case kind::Riemann: return "R";
        case kind::X: return "X";
        case kind::Y: return "Y";
        case kind::Z: return "Z";
        case kind::W: return "W";
        case kind::OmegaTr: return "OmT";
        case kind::OmegaMx: return "Om";
        default: return nullptr;
    }
}

std::string kind_name(int k) {
    if (const char* t = kind_token(k)) return t;
    return kind_info(k).name;
}

// Maps dummy labels to fresh printable names, one table per term.
struct DummyNames {
    std::map<std::pair<int32_t, IndexKind>, std::string> names;
    int next_tensor = 1, next_tractor = 1;

    std::string name(const Index& ix) {
        if (!ix.is_dummy()) return label_name(ix.label);
        auto key = std::make_pair(ix.label, ix.kind);
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        std::string s = ix.kind == IndexKind::Tensor ? "d" + std::to_string(next_tensor++)
                                                     : "Q" + std::to_string(next_tractor++);
        names.emplace(key, s);
        return s;
    }
};

std::string plain_index(const Index& ix, DummyNames& dn) {
    return (ix.up ? "+" : "-") + dn.name(ix);
}

std::string plain_atom(const Atom& a, DummyNames& dn) {
    std::string out;
    // attached derivative chain, outermost first
    for (const Index& d : a.derivs) out += "nabla[" + plain_index(d, dn) + "](";
    out += kind_name(a.kind);
    if (!a.idx.empty()) {
        out += '[';
        for (size_t i = 0; i < a.idx.size(); ++i) {
            if (i) out += ',';
            out += plain_index(a.idx[i], dn);
        }
        out += ']';
    }
    out.append(a.derivs.size(), ')');
    return out;
}

std::string plain_term(const Term& t) {
    DummyNames dn;
    std::ostringstream os;
    os << '(' << t.coeff.str() << ')';
    size_t open = 0;
    bool need_star = true;  // '*' required before the next item (not after '(')
    for (const Node& nd : t.body) {
        os << (need_star ? " * " : "");
        if (std::holds_alternative<Atom>(nd)) {
            os << plain_atom(std::get<Atom>(nd), dn);
            need_star = true;
        } else {
            if (const auto* nb = std::get_if<NablaNode>(&nd)) {
                os << "nabla[" << plain_index(nb->a, dn) << "](";
            } else if (std::holds_alternative<BoxNode>(nd)) {
                os << "Box(";
            } else if (const auto* d = std::get_if<DNode>(&nd)) {
                os << "D[" << plain_index(d->A, dn) << "](";
            } else {
                const auto& dd = std::get<DoubleDNode>(nd);
                os << "DD[" << plain_index(dd.A, dn) << "," << plain_index(dd.P, dn) << "](";
            }
            ++open;
            need_star = false;
        }
    }
    os << std::string(open, ')');
    return os.str();
}

std::string latex_coeff(const DimRational& c) {
    auto wrap = [](const Poly& p) {
        std::string s = p.str();
        return p.degree() > 0 || p.leading() < 0 ? "(" + s + ")" : s;
    };
    if (c.den() == Poly(1)) return wrap(c.num());
    return "\\tfrac{" + c.num().str() + "}{" + c.den().str() + "}";
}

std::string latex_symbol(int k) {
    switch (k) {
        case kind::Metric: return "g";
        case kind::TracMetric: return "h";
        case kind::Schouten: return "\\mathrm{P}";
        case kind::JScalar: return "\\mathrm{J}";
        case kind::Weyl: return "C";
        case kind::Riemann: return "R";
        case kind::X: return "X";
        case kind::Y: return "Y";
        case kind::Z: return "Z";
        case kind::W: return "W";
        case kind::OmegaTr: return "\\Omega";
        case kind::OmegaMx: return "\\Omega";
        default: return "\\mathit{" + kind_info(k).name + "}";
    }
}

std::string latex_indices(const std::vector<Index>& idx, DummyNames& dn) {
    // runs of equal variance grouped, with {}^ / {}_ between groups
    std::string out;
    size_t i = 0;
    bool first = true;
    while (i < idx.size()) {
        bool up = idx[i].up;
        std::string grp;
        while (i < idx.size() && idx[i].up == up) grp += dn.name(idx[i++]);
        out += (first ? "" : "{}");
        out += (up ? "^{" : "_{") + grp + "}";
        first = false;
    }
    return out;
}

std::string latex_term(const Term& t) {
    DummyNames dn;
    std::ostringstream os;
    os << latex_coeff(t.coeff) << "\\,";
    size_t open = 0;
    for (const Node& nd : t.body) {
        if (const auto* a = std::get_if<Atom>(&nd)) {
            for (const Index& d : a->derivs)
                os << "\\nabla" << (d.up ? "^{" : "_{") << dn.name(d) << "}";
            os << latex_symbol(a->kind) << latex_indices(a->idx, dn) << ' ';
        } else if (const auto* nb = std::get_if<NablaNode>(&nd)) {
            os << "\\nabla" << (nb->a.up ? "^{" : "_{") << dn.name(nb->a) << "}(";
            ++open;
        } else if (std::holds_alternative<BoxNode>(nd)) {
            os << "\\Box(";
            ++open;
        } else if (const auto* d = std::get_if<DNode>(&nd)) {
            os << "D" << (d->A.up ? "^{" : "_{") << dn.name(d->A) << "}(";
            ++open;
        } else {
            const auto& dd = std::get<DoubleDNode>(nd);
            os << "D_{" << dn.name(dd.A) << dn.name(dd.P) << "}(";
            ++open;
        }
    }
    os << std::string(open, ')');
    return os.str();
}

nlohmann::json json_index(const Index& ix) {
    nlohmann::json j;
    if (ix.is_dummy()) j["dummy"] = -ix.label;
    else j["name"] = label_name(ix.label);
    j["kind"] = ix.kind == IndexKind::Tensor ? "tensor" : "tractor";
    j["up"] = ix.up;
    return j;
}

nlohmann::json json_node(const Node& nd) {
    nlohmann::json j;
    if (const auto* a = std::get_if<Atom>(&nd)) {
        j["node"] = "atom";
        j["atom"] = kind_name(a->kind);
        j["derivs"] = nlohmann::json::array();
        for (const Index& d : a->derivs) j["derivs"].push_back(json_index(d));
        j["indices"] = nlohmann::json::array();
        for (const Index& ix : a->idx) j["indices"].push_back(json_index(ix));
    } else if (const auto* nb = std::get_if<NablaNode>(&nd)) {
        j["node"] = "nabla";
        j["index"] = json_index(nb->a);
    } else if (std::holds_alternative<BoxNode>(nd)) {
        j["node"] = "box";
    } else if (const auto* d = std::get_if<DNode>(&nd)) {
        j["node"] = "thomasD";
        j["index"] = json_index(d->A);
    } else {
        const auto& dd = std::get<DoubleDNode>(nd);
        j["node"] = "doubleD";
        j["indices"] = nlohmann::json::array({json_index(dd.A), json_index(dd.P)});
    }
    return j;
}

}  // namespace

std::string emit_plain(const Expr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        if (i) out += "\n+ ";
        out += plain_term(e.terms[i]);
    }
    return out;
}

std::string emit_latex(const Expr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < e.terms.size(); ++i) {
        if (i) out += " + ";
        out += latex_term(e.terms[i]);
    }
    return out;
}

std::string emit_json(const Expr& e) {
    nlohmann::json root;
    root["schemaVersion"] = 1;
    root["terms"] = nlohmann::json::array();
    for (const Term& t : e.terms) {
        nlohmann::json jt;
        jt["coeff"] = {{"num", t.coeff.num().str()}, {"den", t.coeff.den().str()}};
        jt["body"] = nlohmann::json::array();
        for (const Node& nd : t.body) jt["body"].push_back(json_node(nd));
        root["terms"].push_back(jt);
    }
    return root.dump(2);
}

}  // namespace tracktor
