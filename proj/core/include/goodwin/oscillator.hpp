#pragma once

#include <span>
#include <vector>

#include "goodwin/kinetics.hpp"

namespace goodwin {

/// One first-order reaction stage: xdot = -f(x) + u, y = g(x).
struct DynamicBlock {
    KineticFunction loss;    // f: removal rate, strictly increasing, f(0) = 0
    KineticFunction output;  // g: stage output, strictly increasing, g(0) >= 0
};

/// A cyclic feedback chain of n-1 dynamic blocks closed by one static block
/// whose output lies in [-M_n, 0] (inhibitory feedback):
///
///   xdot_1 = -f_1(x_1) + u_ext - y_n,   y_1 = g_1(x_1)
///   xdot_i = -f_i(x_i) + g_{i-1}(x_{i-1})          (2 <= i <= n-1)
///   y_n    = g_n(g_{n-1}(x_{n-1}))
///
/// Construction validates the chain: every loss map must vanish at 0 and
/// diverge slowly enough there (so solutions from positive data stay
/// positive), every output map must keep nonnegative values nonnegative, and
/// the feedback block must be bounded with values in [-M_n, 0].
class CfsModel {
public:
    CfsModel(std::vector<DynamicBlock> blocks, KineticFunction feedback);

    /// n: dynamic blocks plus the static feedback block.
    int block_count() const { return static_cast<int>(blocks_.size()) + 1; }
    /// n - 1 states.
    int state_dim() const { return static_cast<int>(blocks_.size()); }

    const DynamicBlock& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
    const std::vector<DynamicBlock>& blocks() const { return blocks_; }
    const KineticFunction& feedback() const { return feedback_; }

    /// M_n = |inf g_n|: how strongly the feedback can pull on block 1.
    double feedback_magnitude() const { return -feedback_.inf_value(); }

private:
    std::vector<DynamicBlock> blocks_;
    KineticFunction feedback_;
};

/// Time derivative of the state under external input u_ext (writes into dx).
void vector_field(const CfsModel& m, std::span<const double> x, double u_ext,
                  std::span<double> dx);

std::vector<double> vector_field(const CfsModel& m, std::span<const double> x, double u_ext);

/// y_1 = g_1(x_1), the quantity the coupling protocols act on.
double output_y1(const CfsModel& m, std::span<const double> x);

/// All block outputs y_1..y_n (the last entry is the feedback output, <= 0).
std::vector<double> block_outputs(const CfsModel& m, std::span<const double> x);

/// Parameters of the three-stage circadian clock model (mRNA X, clock
/// protein Y, transcriptional inhibitor Z). Defaults give a free-running
/// period of about 23.5 h.
struct GonzeParams {
    double nu1 = 0.7;  // maximal transcription rate, nM/h (>= 0)
    double K1 = 1.0;   // inhibition threshold, nM
    double hill_exponent = 4.0;
    double nu2 = 0.35;  // X degradation vmax, nM/h
    double K2 = 1.0;    // X degradation Michaelis constant, nM
    double k3 = 0.7;    // Y production per X, 1/h
    double nu4 = 0.35;  // Y degradation vmax, nM/h
    double K4 = 1.0;
    double k5 = 0.7;  // Z production per Y, 1/h
    double nu6 = 0.35;  // Z degradation vmax, nM/h
    double K6 = 1.0;
};

/// The circadian clock chain as a CfsModel:
///   blocks (MM(nu2,K2), linear k3), (MM(nu4,K4), linear k5), (MM(nu6,K6), identity),
///   feedback hill_inhibition(nu1, K1, hill_exponent).
/// Throws ConfigError for nonpositive parameters (nu1 = 0 is allowed: zero
/// production, every state decays).
CfsModel gonze_model(const GonzeParams& params = {});

}  // namespace goodwin
