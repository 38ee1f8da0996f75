#pragma once

// Independent numeric oracle: truncated Taylor jets of a metric at a point
// in a fixed integer dimension, exact-convention curvature jets, and numeric
// evaluation of canonical-form expressions. Conventions match the symbolic
// engine: [nabla_u, nabla_v] T^c = R_{uv}{}^c{}_d T^d and
// R_abcd = C_abcd + g_ca P_bd - g_cb P_ad + g_db P_ac - g_da P_bc.

#include "tracktor/expr.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace tracktor::jet {

struct JetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated multivariate polynomial: dense coefficients over all monomials
// in `dim` variables of total degree <= cap, graded-lex order.
class MPoly {
  public:
    MPoly() = default;
    MPoly(int dim, int cap);  // zero polynomial

    int dim() const { return dim_; }
    int cap() const { return cap_; }
    double value0() const;  // constant coefficient

    double& coeff(const std::vector<int>& exps);
    double coeff(const std::vector<int>& exps) const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;  // truncated at min(cap, o.cap)
    MPoly operator*(double s) const;
    MPoly& operator+=(const MPoly& o);

    MPoly derivative(int var) const;    // cap decreases by one
    MPoly truncated(int new_cap) const;
    bool is_zero(double tol = 0.0) const;

    const std::vector<double>& raw() const { return c_; }
    std::vector<double>& raw() { return c_; }

  private:
    int dim_ = 0, cap_ = -1;
    std::vector<double> c_;
};

// Tensor-valued jet: component MPolys indexed by a base-dim multi-index of
// length `rank` (all indices in coordinate position).
struct TensorJet {
    int dim = 0, rank = 0, cap = -1;
    std::vector<MPoly> c;

    TensorJet() = default;
    TensorJet(int dim_, int rank_, int cap_);
    MPoly& at(const std::vector<int>& idx);
    const MPoly& at(const std::vector<int>& idx) const;
    size_t flat(const std::vector<int>& idx) const;
};

struct MetricJet {
    int n0 = 0, m = 0;
    uint64_t seed = 0;
    TensorJet g, ginv;   // rank 2
    TensorJet gamma;     // Gamma^m_{ab}, slots (m, a, b)
    TensorJet riem;      // R_{abcd}, engine convention
    TensorJet ric, P;    // rank 2
    MPoly Sc, J;
    TensorJet C;         // Weyl, rank 4

    // Values at the base point of nabla^depth T, flattened with derivative
    // slots outermost-first before the atom slots. Lazily built.
    const std::vector<double>& chain_values(int kind, int depth);

  private:
    std::map<std::pair<int, int>, std::vector<double>> cache_;
};

// Covariant derivative (adds the new slot first): (nabla T)_{a I} with the
// Gamma corrections on every slot of T. `weight` is unused for tensors in a
// fixed scale (the trivializing connection on densities is d).
TensorJet cov_deriv(const TensorJet& t, const MetricJet& jet);

// Values at the base point of nabla^depth applied to `base`.
std::vector<double> chain_values_of(const TensorJet& base, const MetricJet& jet,
                                    int depth);

MetricJet from_metric(TensorJet g, uint64_t seed = 0);
MetricJet build_jet(int n0, int m, uint64_t seed);
MetricJet flat_jet(int n0, int m);
MetricJet sphere_jet(int n0, int m);  // curvature correct at the point only
MetricJet conformally_flat_jet(int n0, int m, uint64_t seed);

// Rebuild for ghat = Omega^2 g (direct recomputation, no transformation
// formulas -- that independence is the point of the oracle).
struct ConformalFactorJet {
    MPoly omega;          // Omega, omega.value0() > 0
    TensorJet upsilon;    // Upsilon_a = Omega^{-1} partial_a Omega
};
ConformalFactorJet random_conformal_factor(int n0, int m, uint64_t seed);
MetricJet conformal_rescale(const MetricJet& jet, const MPoly& omega);

// Random scalar jet (used for densities and test functions).
MPoly random_scalar(int n0, int m, uint64_t seed, double scale = 1.0);

// --- expression evaluation ---------------------------------------------------

// Numeric evaluation of a fully expanded expression at the base point.
// Free labels are assigned component values: tensor labels in 0..n0-1,
// tractor labels in 0..n0+1 with the component model
//   lowered X_A = bottom, Y_A = top, Z_A{}^a = middle unit covectors,
// and the tractor metric coupling top<->bottom plus identity in the middle.
// Section atoms take their jets from `sections`.
struct EvalContext {
    MetricJet* jet = nullptr;
    long long n0 = 0;
    std::map<int, TensorJet> sections;            // section kind -> scalar jet
    std::map<int32_t, int> frees;                 // free label -> component
    std::map<std::pair<int, int>, std::vector<double>> section_chains;
};

double eval_term(const Term& t, EvalContext& ctx);
double eval_expr(const Expr& e, EvalContext& ctx);

// Maximum |eval| of e over all assignments of the given free labels, and the
// maximum absolute single-term value encountered (for relative tolerances).
struct EvalExtrema {
    double max_abs = 0.0;
    double max_term = 0.0;
};
EvalExtrema eval_all_components(const Expr& e, EvalContext& ctx,
                                const std::vector<Index>& frees);

}  // namespace tracktor::jet
