#pragma once

// Bipartite state sum_j sum_{m,m'} (C_j)_{m m'} |j m>_A |j m'>_B stored as one
// d_j x d_j block per irrep of an IrrepSpectrum.

#include <dcc/optimal_state.hpp>
#include <dcc/su2.hpp>

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace dcc {

struct BlockState {
    IrrepSpectrum spectrum;
    std::vector<Eigen::MatrixXcd> blocks;

    explicit BlockState(IrrepSpectrum s) : spectrum(std::move(s)) {
        blocks.reserve(spectrum.size());
        for (auto l : spectrum.labels()) blocks.push_back(Eigen::MatrixXcd::Zero(l.dim(), l.dim()));
    }

    /// <this|other> = sum_j tr(C_j^dagger C'_j).
    std::complex<double> inner(const BlockState& other) const {
        if (!(spectrum == other.spectrum)) throw InvalidArgument("BlockState: spectrum mismatch");
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < blocks.size(); ++k)
            acc += (blocks[k].adjoint() * other.blocks[k]).trace();
        return acc;
    }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto& b : blocks) acc += b.squaredNorm();
        return acc;
    }

    /// Flattened amplitudes: irreps in descending j, then row-major over
    /// (m, m') with m descending.
    Eigen::VectorXcd to_vector() const {
        Eigen::VectorXcd v(spectrum.signal_dimension());
        Eigen::Index pos = 0;
        for (const auto& b : blocks)
            for (Eigen::Index r = 0; r < b.rows(); ++r)
                for (Eigen::Index c = 0; c < b.cols(); ++c) v(pos++) = b(r, c);
        return v;
    }
};

/// (U_A(g) x 1_B) |state>: every block is left-multiplied by D^j(g).
inline BlockState rotate_alice(const BlockState& state, const Rotation& g) {
    BlockState out = state;
    for (int k = 0; k < state.spectrum.size(); ++k)
        out.blocks[k] = wigner_D(state.spectrum[k], g).matrix * state.blocks[k];
    return out;
}

}  // namespace dcc
