#include "goodwin/oscillator.hpp"

#include <cmath>
#include <string>

#include "goodwin/errors.hpp"

namespace goodwin {

namespace {

// The positivity argument needs the integral of 1/f to diverge at 0+ and at
// +infinity. Among the supported variants that holds exactly when f(0) = 0
// with locally linear decay and f is unbounded-or-MM (whose reciprocal tends
// to a positive constant).
bool escape_integral_diverges(const KineticFunction& f) {
    const auto& v = f.variant();
    if (std::holds_alternative<Linear>(v) || std::holds_alternative<Identity>(v) ||
        std::holds_alternative<MichaelisMenten>(v)) {
        return true;
    }
    if (const auto* a = std::get_if<Affine>(&v)) return a->offset == 0.0;
    return false;
}

void validate_dynamic_block(const DynamicBlock& b, int index) {
    const std::string where = "block " + std::to_string(index + 1);
    if (!b.loss.strictly_increasing() || b.loss.domain().lo != 0.0) {
        throw ConfigError(where + ": loss map " + b.loss.describe() +
                          " must be strictly increasing on [0, inf)");
    }
    if (b.loss.value(0.0) != 0.0 || !escape_integral_diverges(b.loss)) {
        throw ConfigError(where + ": loss map " + b.loss.describe() +
                          " must vanish at 0 with a divergent reciprocal integral");
    }
    if (!b.output.strictly_increasing()) {
        throw ConfigError(where + ": output map " + b.output.describe() +
                          " must be strictly increasing");
    }
    if (b.output.domain().contains(0.0) && b.output.value(0.0) < 0.0) {
        throw ConfigError(where + ": output map " + b.output.describe() +
                          " must map nonnegative values to nonnegative values");
    }
    if (b.output.inf_value() < 0.0) {
        throw ConfigError(where + ": output map " + b.output.describe() +
                          " must be nonnegative on [0, inf)");
    }
}

}  // namespace

CfsModel::CfsModel(std::vector<DynamicBlock> blocks, KineticFunction feedback)
    : blocks_(std::move(blocks)), feedback_(std::move(feedback)) {
    if (blocks_.empty()) throw ConfigError("cfs model: need at least one dynamic block");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        validate_dynamic_block(blocks_[i], static_cast<int>(i));
    }
    if (feedback_.sup_value() > 0.0 || !std::isfinite(feedback_.inf_value())) {
        throw ConfigError("cfs model: feedback block " + feedback_.describe() +
                          " must be bounded with values in [-M_n, 0]");
    }
}

void vector_field(const CfsModel& m, std::span<const double> x, double u_ext,
                  std::span<double> dx) {
    const int dim = m.state_dim();
    const double y_last = m.block(dim - 1).output.value(x[static_cast<std::size_t>(dim - 1)]);
    const double y_n = m.feedback().value(y_last);  // <= 0: inhibitory
    dx[0] = -m.block(0).loss.value(x[0]) + u_ext - y_n;
    for (int i = 1; i < dim; ++i) {
        dx[static_cast<std::size_t>(i)] =
            -m.block(i).loss.value(x[static_cast<std::size_t>(i)]) +
            m.block(i - 1).output.value(x[static_cast<std::size_t>(i - 1)]);
    }
}

std::vector<double> vector_field(const CfsModel& m, std::span<const double> x, double u_ext) {
    std::vector<double> dx(static_cast<std::size_t>(m.state_dim()));
    vector_field(m, x, u_ext, dx);
    return dx;
}

double output_y1(const CfsModel& m, std::span<const double> x) {
    return m.block(0).output.value(x[0]);
}

std::vector<double> block_outputs(const CfsModel& m, std::span<const double> x) {
    std::vector<double> ys(static_cast<std::size_t>(m.block_count()));
    for (int i = 0; i < m.state_dim(); ++i) {
        ys[static_cast<std::size_t>(i)] = m.block(i).output.value(x[static_cast<std::size_t>(i)]);
    }
    ys.back() = m.feedback().value(ys[static_cast<std::size_t>(m.state_dim() - 1)]);
    return ys;
}

CfsModel gonze_model(const GonzeParams& p) {
    // nu1 = 0 is the documented no-production degenerate; everything else
    // must be strictly positive for the chain to be well posed.
    if (p.nu1 < 0.0) throw ConfigError("gonze model: nu1 must be >= 0");
    const struct {
        const char* name;
        double value;
    } positives[] = {{"K1", p.K1}, {"hill_exponent", p.hill_exponent}, {"nu2", p.nu2},
                     {"K2", p.K2}, {"k3", p.k3},  {"nu4", p.nu4},      {"K4", p.K4},
                     {"k5", p.k5}, {"nu6", p.nu6}, {"K6", p.K6}};
    for (const auto& q : positives) {
        if (!(q.value > 0.0)) {
            throw ConfigError(std::string("gonze model: ") + q.name + " must be > 0");
        }
    }
    std::vector<DynamicBlock> blocks;
    blocks.push_back({KineticFunction(MichaelisMenten{p.nu2, p.K2}), KineticFunction(Linear{p.k3})});
    blocks.push_back({KineticFunction(MichaelisMenten{p.nu4, p.K4}), KineticFunction(Linear{p.k5})});
    blocks.push_back({KineticFunction(MichaelisMenten{p.nu6, p.K6}), KineticFunction(Identity{})});
    return CfsModel(std::move(blocks),
                    KineticFunction(HillInhibition{p.nu1, p.K1, p.hill_exponent}));
}

}  // namespace goodwin
