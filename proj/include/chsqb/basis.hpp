// basis.hpp: truncated Hilbert spaces, index maps and initial states
//
// CHS product basis |n, j=N/2, m=N/2-q>, flat index n*(N+1) + q (photon number
// is the slow index). HS spin-only basis |j=N/2, m=N/2-q>, flat index q.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace chsqb {

using cplx = std::complex<double>;

enum class BasisKind { Chs, Hs };

std::string to_string(BasisKind kind);

// Physical and numerical knobs. Defaults are the fixed plot setting
// N=10, g1=2, g2=0.5, gamma=0.5, Delta=2 at resonance with n_ph = 4N.
struct ModelParams {
    int n_spins{10};
    double g1{2.0};
    double g2{0.5};
    double gamma{0.5};
    double delta{2.0};
    double omega_a{1.0};
    double omega_c{1.0};
    int n_ph{40};

    // Same couplings, N spins, cutoff factor*N.
    [[nodiscard]] ModelParams with_spins(int n, int nph_factor = 4) const;

    double j() const noexcept { return 0.5 * n_spins; }
};

// Throws std::invalid_argument naming the offending field.
void validate(const ModelParams& p);

// Shape information carried by every operator and state.
struct BasisShape {
    BasisKind kind{BasisKind::Chs};
    int n_spins{0};
    int n_ph{0};   // ignored for Hs

    std::size_t spin_dim() const noexcept { return static_cast<std::size_t>(n_spins) + 1; }
    std::size_t photon_dim() const noexcept {
        return kind == BasisKind::Chs ? static_cast<std::size_t>(n_ph) + 1 : 1;
    }
    std::size_t dim() const noexcept { return spin_dim() * photon_dim(); }

    friend bool operator==(const BasisShape&, const BasisShape&) = default;
};

BasisShape chs_shape(const ModelParams& p);
BasisShape hs_shape(const ModelParams& p);
BasisShape shape_for(const ModelParams& p, BasisKind kind);

std::size_t dim_chs(const ModelParams& p);
std::size_t dim_hs(const ModelParams& p);

struct BasisLabel {
    int n{0};   // photons
    int q{0};   // spin lowerings from m = N/2

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

std::size_t flat_index(const BasisShape& shape, BasisLabel label);
BasisLabel unflatten(const BasisShape& shape, std::size_t index);

// Z2 parity (-1)^(n+q). Every Hamiltonian in this project commutes with it.
int parity(const BasisShape& shape, std::size_t index);

class StateVector {
public:
    StateVector(BasisShape shape, Eigen::VectorXcd amplitudes);

    const BasisShape& shape() const noexcept { return shape_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amp_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(amp_.size()); }
    double norm() const { return amp_.norm(); }

private:
    BasisShape shape_;
    Eigen::VectorXcd amp_;
};

// |n = N> (x) |all spins down>
StateVector initial_state_chs(const ModelParams& p);
// |j = N/2, m = -N/2>
StateVector initial_state_hs(const ModelParams& p);
StateVector initial_state(const ModelParams& p, BasisKind kind);

}  // namespace chsqb
