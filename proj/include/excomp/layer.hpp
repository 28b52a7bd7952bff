#pragma once

// Finite composite layer in vacuum: Fabry-Perot transmission and reflection
// per channel, scattered means and operators for counter-propagating inputs,
// and the detector photocurrent.

#include "excomp/fock.hpp"
#include "excomp/medium.hpp"

namespace excomp::layer {

using fock::Complex;

// Airy amplitudes of a homogeneous slab of index n and thickness d in vacuum:
//   r = (1 - n)/(1 + n), phi = n k d,
//   T = (1 - r^2) e^{i phi} / (1 - r^2 e^{2 i phi}),
//   R = r (1 - e^{2 i phi}) / (1 - r^2 e^{2 i phi}).
struct SlabAmplitudes {
  Complex T, R;
  double denom_mag = 0.0;        // |1 - r^2 e^{2 i phi}|
  bool well_conditioned = true;  // false once the denominator drops below 1e-14
};
SlabAmplitudes slab_amplitudes(const Complex& n, double k, double d);

// Channel amplitudes of the composite layer: the mean amplitude crosses with
// the index-n1 slab response, fluctuations with the index-n2 one.
struct LayerResponse {
  double omega = 0.0;
  double k = 0.0;
  double thickness = 0.0;
  Complex T1, R1;  // mean (coherent) channel
  Complex T2, R2;  // fluctuation channel
  bool well_conditioned = true;
};
// Throws ForbiddenZoneError when the lossless response is evanescent.
LayerResponse layer_response(double omega, double thickness,
                             const medium::MediumParams& p);
// Same, reusing an already computed bulk response.
LayerResponse layer_response(const medium::OpticalResponse& resp,
                             double thickness);

// Scattered mean amplitudes for forward / backward inputs:
//   <out_fwd> = T1 <in_fwd> + R1 <in_bwd>,  and symmetrically backward.
struct OutputMeans {
  Complex fwd, bwd;
};
OutputMeans output_means(const LayerResponse& L, const Complex& mean_fwd,
                         const Complex& mean_bwd);

enum class Direction { forward, backward };

// Output lowering operator of one port written over the input operators:
//   a_out = t_same a_same + r_opp a_opp + c_const,
// with t_same = T2, r_opp = R2, and the c-number carrying the channel split
//   c_const = (T1 - T2) <a_same> + (R1 - R2) <a_opp>.
struct OutputOperator {
  Complex t_same, r_opp, c_const;
};
OutputOperator output_operator(Direction dir, const LayerResponse& L,
                               const Complex& mean_fwd, const Complex& mean_bwd);

// Mean photocurrent behind the layer for a forward input with vacuum entering
// backward: |T2|^2 <n> + (|T1|^2 - |T2|^2) |<a>|^2.
double photocurrent(double mean_n_fwd, const Complex& mean_a_fwd,
                    const LayerResponse& L);

}  // namespace excomp::layer
