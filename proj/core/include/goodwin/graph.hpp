#pragma once

#include <vector>

#include "goodwin/matrix.hpp"

namespace goodwin {

/// Weighted digraph over N oscillators. Entry (j, k) of the weight matrix is
/// the weight of the edge from k to j; the diagonal is zero and all weights
/// are nonnegative. The coupling gain c is NOT folded into the weights; the
/// synchronization criteria quantify over it explicitly.
class CouplingGraph {
public:
    /// All-to-all with a common weight.
    static CouplingGraph complete(int n, double weight = 1.0);

    /// Undirected ring (each node coupled to both neighbors).
    static CouplingGraph ring(int n, double weight = 1.0);

    /// Arbitrary weight matrix; validates shape, zero diagonal, nonnegativity.
    static CouplingGraph from_weights(Matrix weights);

    int size() const { return weights_.rows(); }
    const Matrix& weights() const { return weights_; }

private:
    explicit CouplingGraph(Matrix w) : weights_(std::move(w)) {}
    Matrix weights_;
};

/// L[j][j] = sum_k w[j][k], L[j][k] = -w[j][k] for j != k. Rows sum to zero;
/// diagonals use correctly rounded summation so the result is exactly
/// invariant under relabeling.
Matrix laplacian(const CouplingGraph& g);

struct GraphStructure {
    bool balanced;            // column sums of L vanish (tolerance 1e-12)
    bool strongly_connected;  // two reachability sweeps on the support pattern
};

GraphStructure graph_structure(const CouplingGraph& g);

/// Second-smallest eigenvalue of (L + L^T)/2, by cyclic Jacobi rotations.
/// Requires N >= 2 and a balanced, strongly connected graph; throws
/// AnalysisError otherwise.
double lambda2(const CouplingGraph& g);

/// All eigenvalues of a symmetric matrix, ascending (cyclic Jacobi).
std::vector<double> symmetric_eigenvalues(Matrix a);

}  // namespace goodwin
