#include "chsqb/basis.hpp"

#include <cmath>

namespace chsqb {

std::string to_string(BasisKind kind) {
    return kind == BasisKind::Chs ? "chs" : "hs";
}

ModelParams ModelParams::with_spins(int n, int nph_factor) const {
    ModelParams out = *this;
    out.n_spins = n;
    out.n_ph = nph_factor * n;
    return out;
}

void validate(const ModelParams& p) {
    if (p.n_spins < 1) {
        throw std::invalid_argument("n_spins: must be >= 1 (got " + std::to_string(p.n_spins) + ")");
    }
    if (p.n_ph < p.n_spins) {
        throw std::invalid_argument("n_ph: photon cutoff must be >= n_spins to host the initial Fock state (got " +
                                    std::to_string(p.n_ph) + " < " + std::to_string(p.n_spins) + ")");
    }
    const std::pair<const char*, double> reals[] = {
        {"g1", p.g1}, {"g2", p.g2}, {"gamma", p.gamma}, {"delta", p.delta},
        {"omega_a", p.omega_a}, {"omega_c", p.omega_c}};
    for (const auto& [name, v] : reals) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(name) + ": must be finite");
        }
    }
}

BasisShape chs_shape(const ModelParams& p) { return {BasisKind::Chs, p.n_spins, p.n_ph}; }
BasisShape hs_shape(const ModelParams& p) { return {BasisKind::Hs, p.n_spins, 0}; }
BasisShape shape_for(const ModelParams& p, BasisKind kind) {
    return kind == BasisKind::Chs ? chs_shape(p) : hs_shape(p);
}

std::size_t dim_chs(const ModelParams& p) { return chs_shape(p).dim(); }
std::size_t dim_hs(const ModelParams& p) { return hs_shape(p).dim(); }

std::size_t flat_index(const BasisShape& shape, BasisLabel label) {
    const int n_max = shape.kind == BasisKind::Chs ? shape.n_ph : 0;
    if (label.n < 0 || label.n > n_max || label.q < 0 || label.q > shape.n_spins) {
        throw std::out_of_range("flat_index: label (n=" + std::to_string(label.n) + ", q=" +
                                std::to_string(label.q) + ") outside basis");
    }
    return static_cast<std::size_t>(label.n) * shape.spin_dim() + static_cast<std::size_t>(label.q);
}

BasisLabel unflatten(const BasisShape& shape, std::size_t index) {
    if (index >= shape.dim()) {
        throw std::out_of_range("unflatten: index " + std::to_string(index) + " outside basis");
    }
    const auto stride = shape.spin_dim();
    return {static_cast<int>(index / stride), static_cast<int>(index % stride)};
}

int parity(const BasisShape& shape, std::size_t index) {
    const auto [n, q] = unflatten(shape, index);
    return ((n + q) % 2 == 0) ? 1 : -1;
}

StateVector::StateVector(BasisShape shape, Eigen::VectorXcd amplitudes)
    : shape_(shape), amp_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amp_.size()) != shape_.dim()) {
        throw std::invalid_argument("StateVector: amplitude count does not match basis dimension");
    }
    if (std::abs(amp_.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("StateVector: norm deviates from 1 by more than 1e-12");
    }
}

StateVector initial_state_chs(const ModelParams& p) {
    validate(p);
    const auto shape = chs_shape(p);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.dim()));
    amp(static_cast<Eigen::Index>(flat_index(shape, {p.n_spins, p.n_spins}))) = 1.0;
    return {shape, std::move(amp)};
}

StateVector initial_state_hs(const ModelParams& p) {
    if (p.n_spins < 1) validate(p);
    const auto shape = hs_shape(p);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(shape.dim()));
    amp(p.n_spins) = 1.0;
    return {shape, std::move(amp)};
}

StateVector initial_state(const ModelParams& p, BasisKind kind) {
    return kind == BasisKind::Chs ? initial_state_chs(p) : initial_state_hs(p);
}

}  // namespace chsqb
