#include "goodwin/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "goodwin/errors.hpp"
#include "goodwin/numerics.hpp"

namespace goodwin {

double max_norm(const Matrix& a) {
    double best = 0.0;
    std::vector<double> abs_row(static_cast<std::size_t>(a.cols()));
    for (int r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        for (int c = 0; c < a.cols(); ++c) abs_row[static_cast<std::size_t>(c)] = std::abs(row[c]);
        best = std::max(best, exact_sum(abs_row));
    }
    return best;
}

CouplingGraph CouplingGraph::complete(int n, double weight) {
    if (n < 1) throw ConfigError("complete graph: N must be >= 1");
    if (weight < 0.0) throw ConfigError("complete graph: weight must be >= 0");
    Matrix w(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) w(j, k) = weight;
    return CouplingGraph(std::move(w));
}

CouplingGraph CouplingGraph::ring(int n, double weight) {
    if (n < 2) throw ConfigError("ring graph: N must be >= 2");
    if (weight < 0.0) throw ConfigError("ring graph: weight must be >= 0");
    Matrix w(n, n);
    for (int j = 0; j < n; ++j) {
        w(j, (j + 1) % n) = weight;
        w(j, (j + n - 1) % n) = weight;
    }
    if (n == 2) {
        // Neighbors coincide; keep a single edge each way.
        w(0, 1) = weight;
        w(1, 0) = weight;
    }
    return CouplingGraph(std::move(w));
}

CouplingGraph CouplingGraph::from_weights(Matrix weights) {
    if (weights.rows() != weights.cols() || weights.rows() < 1) {
        throw ConfigError("coupling graph: weight matrix must be square and nonempty");
    }
    for (int j = 0; j < weights.rows(); ++j) {
        if (weights(j, j) != 0.0) {
            throw ConfigError("coupling graph: diagonal entry (" + std::to_string(j) + "," +
                              std::to_string(j) + ") must be 0");
        }
        for (int k = 0; k < weights.cols(); ++k) {
            if (!(weights(j, k) >= 0.0)) {
                throw ConfigError("coupling graph: weight (" + std::to_string(j) + "," +
                                  std::to_string(k) + ") must be >= 0");
            }
        }
    }
    return CouplingGraph(std::move(weights));
}

Matrix laplacian(const CouplingGraph& g) {
    const int n = g.size();
    const Matrix& w = g.weights();
    Matrix l(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k)
            if (j != k) l(j, k) = -w(j, k);
        l(j, j) = exact_sum(w.row(j));
    }
    return l;
}

namespace {

void reach(const Matrix& w, int start, bool transpose, std::vector<char>& seen) {
    std::vector<int> stack{start};
    seen.assign(static_cast<std::size_t>(w.rows()), 0);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < w.rows(); ++u) {
            const double edge = transpose ? w(u, v) : w(v, u);
            if (edge > 0.0 && !seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
}

}  // namespace

GraphStructure graph_structure(const CouplingGraph& g) {
    const int n = g.size();
    const Matrix l = laplacian(g);

    bool balanced = true;
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int k = 0; k < n && balanced; ++k) {
        for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = l(j, k);
        if (std::abs(exact_sum(col)) > 1e-12) balanced = false;
    }

    // Strong connectivity: every node reachable from node 0 along edges and
    // along reversed edges.
    std::vector<char> fwd, bwd;
    reach(g.weights(), 0, false, fwd);
    reach(g.weights(), 0, true, bwd);
    bool connected = true;
    for (int v = 0; v < n; ++v) {
        if (!fwd[static_cast<std::size_t>(v)] || !bwd[static_cast<std::size_t>(v)]) {
            connected = false;
            break;
        }
    }
    return {balanced, connected};
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
    const int n = a.rows();
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return std::vector<double>(static_cast<std::size_t>(n), 0.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-14 * scale * n) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

double lambda2(const CouplingGraph& g) {
    if (g.size() < 2) throw AnalysisError("lambda2: need at least two oscillators");
    const auto structure = graph_structure(g);
    if (!structure.balanced || !structure.strongly_connected) {
        throw AnalysisError("lambda2: graph must be balanced and strongly connected");
    }
    const Matrix l = laplacian(g);
    const int n = g.size();
    Matrix sym(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) sym(j, k) = 0.5 * (l(j, k) + l(k, j));
    return symmetric_eigenvalues(std::move(sym))[1];
}

}  // namespace goodwin
