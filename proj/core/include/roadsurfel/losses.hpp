#pragma once

#include <span>

#include "roadsurfel/rasterizer.hpp"

namespace roadsurfel {

struct LossWeights {
  double lambda_c = 1.0;    // photometric
  double lambda_d = 0.05;   // depth smoothness
  double lambda_n = 0.05;   // normal consistency
  double lambda_s = 0.1;    // semantic alignment

  bool valid() const {
    return lambda_c >= 0 && lambda_d >= 0 && lambda_n >= 0 && lambda_s >= 0;
  }
};

struct LossBreakdown {
  double photometric = 0.0;
  double depth_smooth = 0.0;
  double normal_consistency = 0.0;
  double semantic = 0.0;
  double total = 0.0;
};

/// Supervision inputs for one frame, assembled by the occlusion module.
struct SupervisionData {
  ImageD target;          // HxWx3 target RGB
  ImageB valid;           // photometric validity
  ImageB semantic_valid;  // semantic validity (never on occluder pixels)
  ImageI labels;          // HxWx1 class indices
  bool from_inpainted = false;
  bool from_enhanced = false;
};

/// Mean over valid pixels of the per-pixel L1 color difference summed over
/// channels. Throws std::invalid_argument on shape mismatch or when no
/// pixel is valid.
double photometric_loss(const ImageD& rendered, const ImageD& target,
                        const ImageB& valid_mask);

/// Mean over all pixels of sum_{i<j} omega_i * omega_j * |z_i - z_j| over
/// the hits of each ray. Rays with fewer than two hits contribute zero.
double depth_smoothness_loss(std::span<const RayContribution> contribs);

/// Mean over pixels with a valid dominant normal of
/// sum_i omega_i * (1 - n_i . N). Zero when no pixel has a valid normal.
double normal_consistency_loss(std::span<const RayContribution> contribs,
                               std::span<const Vec3> surfel_normals,
                               const ImageD& dominant_normal,
                               const ImageB& normal_valid);

/// Mean over valid pixels of softmax cross-entropy between the blended
/// logits and the label. Throws when no pixel is valid.
double semantic_loss(const ImageD& rendered_semantic, const ImageI& label_map,
                     const ImageB& valid_mask);

/// All four terms plus their weighted sum for one rendered frame.
/// Requires render contributions to be retained.
LossBreakdown total_loss(const Scene& scene, const RenderOutput& render_out,
                         const SupervisionData& supervision,
                         const LossWeights& weights);

/// Stable softmax cross-entropy of one logit vector against a class index.
double softmax_cross_entropy(std::span<const double> logits, int label);

}  // namespace roadsurfel
