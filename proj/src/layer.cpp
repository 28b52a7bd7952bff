#include "excomp/layer.hpp"

#include <cmath>
#include <string>

namespace excomp::layer {

namespace {
const Complex kI(0.0, 1.0);
constexpr double kDenomFloor = 1e-14;
}  // namespace

SlabAmplitudes slab_amplitudes(const Complex& n, double k, double d) {
  if (!(k > 0.0)) throw ValidationError("wavenumber must be positive");
  if (!(d > 0.0)) throw ValidationError("layer thickness must be positive");
  const Complex r = (1.0 - n) / (1.0 + n);
  const Complex phase = std::exp(kI * n * k * d);
  const Complex phase_sq = phase * phase;
  const Complex denom = 1.0 - r * r * phase_sq;
  SlabAmplitudes out;
  out.denom_mag = std::abs(denom);
  out.well_conditioned = out.denom_mag >= kDenomFloor;
  out.T = (1.0 - r * r) * phase / denom;
  out.R = r * (1.0 - phase_sq) / denom;
  return out;
}

LayerResponse layer_response(const medium::OpticalResponse& resp,
                             double thickness) {
  if (resp.forbidden) {
    throw ForbiddenZoneError(
        "layer response requested inside an evanescent zone at omega = " +
        std::to_string(resp.omega));
  }
  const SlabAmplitudes coh = slab_amplitudes(resp.n1, resp.k, thickness);
  const SlabAmplitudes inc = slab_amplitudes(resp.n2, resp.k, thickness);
  LayerResponse out;
  out.omega = resp.omega;
  out.k = resp.k;
  out.thickness = thickness;
  out.T1 = coh.T;
  out.R1 = coh.R;
  out.T2 = inc.T;
  out.R2 = inc.R;
  out.well_conditioned = coh.well_conditioned && inc.well_conditioned;
  return out;
}

LayerResponse layer_response(double omega, double thickness,
                             const medium::MediumParams& p) {
  return layer_response(medium::refractive_indices(omega, p), thickness);
}

OutputMeans output_means(const LayerResponse& L, const Complex& mean_fwd,
                         const Complex& mean_bwd) {
  return OutputMeans{L.T1 * mean_fwd + L.R1 * mean_bwd,
                     L.T1 * mean_bwd + L.R1 * mean_fwd};
}

OutputOperator output_operator(Direction dir, const LayerResponse& L,
                               const Complex& mean_fwd, const Complex& mean_bwd) {
  const Complex same = dir == Direction::forward ? mean_fwd : mean_bwd;
  const Complex opp = dir == Direction::forward ? mean_bwd : mean_fwd;
  OutputOperator out;
  out.t_same = L.T2;
  out.r_opp = L.R2;
  out.c_const = (L.T1 - L.T2) * same + (L.R1 - L.R2) * opp;
  return out;
}

double photocurrent(double mean_n_fwd, const Complex& mean_a_fwd,
                    const LayerResponse& L) {
  const double t2 = std::norm(L.T2);
  const double t1 = std::norm(L.T1);
  return t2 * mean_n_fwd + (t1 - t2) * std::norm(mean_a_fwd);
}

}  // namespace excomp::layer
