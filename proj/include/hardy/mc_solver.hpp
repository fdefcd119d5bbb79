#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hardy/boundary_data.hpp"
#include "hardy/geometry.hpp"
#include "hardy/holo.hpp"

namespace hardy {

struct SolverConfig {
    int modes = 32;     // N: negative modes per component in normalized coordinates
    int cutoff = 0;     // M: restriction cutoff, 0 means 2N
    double tol_in = 1e-8;
    bool paper_inverse = false;  // invert O as O^T (O O^T)^{-1}
    double max_condition = 1e8;
    int threads = 1;

    int resolved_cutoff() const { return cutoff > 0 ? cutoff : 2 * modes; }
};

enum class PhiKind { Re, Im };

struct PhiBasisElement {
    int k = -1;
    PhiKind kind = PhiKind::Re;
    HoloFunction value;
};

struct ComponentDiagnostics {
    int component = 0;
    double min_sym_eig_q = 0.0;  // of (Q + Q^T) / 2
    double min_eig_oot = 0.0;    // of O O^T
    double condition = 1.0;      // of O
    double aliasing = 0.0;       // worst relative mass lost when re-expanding
};

struct BuildStats {
    std::vector<int> builds_per_level;  // level 1 = first filled domains
    int cache_hits = 0;

    int total_builds() const;
};

class SolverOperator;
using SolverPtr = std::shared_ptr<const SolverOperator>;

struct SolverCache {
    std::mutex mutex;
    std::map<std::string, SolverPtr> entries;
    BuildStats stats;
};

// Everything attached to one distinguished boundary component.
struct ComponentBlock {
    Normalization normalization;
    SpinorBranch branch{};
    SolverPtr filled{};
    // Laurent coefficients (on the filled domain) of S(P_in[w^k]) and
    // S(P_in[i w^k]), interleaved real, one column per Re/Im direction,
    // ordered k = -1, -2, ..., -N.
    Matrix correction{};
    Matrix O{};
    Matrix rhs{};    // boundary data on this component -> right-hand side 2 F_-(t')
    Matrix back{};   // c -> Laurent coefficients of the transported Phi(c)
    Matrix solve{};  // boundary data on this component -> Laurent coefficients
    ComponentDiagnostics diagnostics{};
};

struct ResidualReport {
    double in_residual = 0.0;   // ||P_in(R(F) - f)||
    double data_norm = 0.0;     // ||f||
    double out_part = 0.0;      // ||P_out f||, not constrained by the problem
    double relative() const { return data_norm > 0.0 ? in_residual / data_norm : in_residual; }
};

struct SolveResult {
    HoloFunction function;
    CVector coefficients;  // in the domain's Laurent basis
    ResidualReport report;
};

// Assembled inverse of T on a circle domain at fixed truncation. Immutable
// once built; safe for concurrent solves.
class SolverOperator {
public:
    static SolverPtr build(const CircleDomain& domain, const SolverConfig& config = {});
    static SolverPtr build(const CircleDomain& domain, const SolverConfig& config,
                           SolverCache& cache, int level = 0);

    const CircleDomain& domain() const { return domain_; }
    const SolverConfig& config() const { return config_; }
    int modes() const { return config_.modes; }
    int cutoff() const { return cutoff_; }
    bool is_disk() const { return domain_.components() == 1; }
    const LaurentBasis& basis() const { return basis_; }
    const ComponentBlock& block(int j) const;
    const std::vector<ComponentBlock>& blocks() const { return blocks_; }
    const BuildStats& stats() const { return stats_; }
    // Depth of the recursion below this solver (0 for a disk).
    int depth() const;

    // Real matrix from interleaved boundary data (all components) to
    // interleaved Laurent coefficients. Includes the projection onto L2_in.
    const Matrix& matrix() const { return full_; }

    HoloFunction function(const CVector& coefficients) const { return basis_.function(coefficients); }

    // Solution with data t on component j and zero data elsewhere.
    HoloFunction solve_component(int j, const ComponentFunction& t) const;
    // Same solution as an evaluator tree: transport of Phi(c).
    HoloFunction solve_component_tree(int j, const ComponentFunction& t) const;
    // Coefficients c of Phi in normalized coordinates for data t.
    Vector phi_coefficients(int j, const ComponentFunction& t) const;

    SolveResult solve(const BoundaryFunction& f) const;
    CVector solve_coefficients(const BoundaryFunction& f) const;

    // Real matrix from Laurent coefficients to boundary modes (all components).
    Matrix restriction_matrix() const;

private:
    SolverOperator(CircleDomain domain, SolverConfig config);
    ComponentBlock build_component(int j, SolverCache& cache, int level) const;

    CircleDomain domain_;
    SolverConfig config_;
    int cutoff_ = 0;
    LaurentBasis basis_;
    std::vector<ComponentBlock> blocks_;
    Matrix full_;
    BuildStats stats_;
};

// phi_k: the pole w^k (or i w^k) at the origin minus the filled-domain
// solution of its in-projection, so that t_apply(phi_k) vanishes on the
// filled domain. k in [-N, -1].
PhiBasisElement phi_basis(const SolverOperator& filled, int k, PhiKind kind, int cutoff);
std::vector<PhiBasisElement> phi_basis_all(const SolverOperator& filled, int modes, int cutoff);

// sum_k Re(c_k) phi_k^Re + Im(c_k) phi_k^Im over the negative modes of c.
HoloFunction apply_phi(const std::vector<PhiBasisElement>& basis, const ComponentFunction& c);
// Same with c given as interleaved real coordinates in the order k = -1..-N.
HoloFunction apply_phi(const std::vector<PhiBasisElement>& basis, const Vector& c);

// Id + J F_+ R Phi from the basis functions themselves (restriction to the
// unit circle by sampling).
Matrix assemble_O(const std::vector<PhiBasisElement>& basis, int cutoff);

// Multiplication by i on interleaved coordinates.
Matrix times_i_matrix(Eigen::Index size);

struct WTransform {
    int test_modes = 0;
    Matrix in_basis;    // orthonormal columns spanning L2_in at modes -K..K-1
    Matrix out_basis;   // same for L2_out
    Matrix w;           // W in these coordinates (out x in)
    Matrix minus_jwj;   // (-j) W j, in x out
    Matrix t_u_inverse; // T U^{-1}, in x out, from an independent U solve
    double jw_squared_residual = 0.0;  // ||(j W)^2 + Id|| on the test space
    double tu_residual = 0.0;          // ||(-j) W j - T U^{-1}|| on the test space
    int rank = 0;
};

// Twisted Hilbert transform W = U T^{-1} on the test subspace of boundary
// modes |k| <= K (K = N/8, at least 1, when test_modes is 0).
WTransform w_transform(const SolverOperator& solver, int test_modes = 0);

}  // namespace hardy
