#include "roadsurfel/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace roadsurfel {

double photometric_loss(const ImageD& rendered, const ImageD& target,
                        const ImageB& valid_mask) {
  if (!rendered.same_shape(target) || rendered.height() != valid_mask.height() ||
      rendered.width() != valid_mask.width())
    throw std::invalid_argument("photometric_loss: buffer shapes differ");

  double sum = 0.0;
  int64_t valid_count = 0;
  for (int y = 0; y < rendered.height(); ++y)
    for (int x = 0; x < rendered.width(); ++x) {
      if (!valid_mask.at(y, x)) continue;
      ++valid_count;
      for (int c = 0; c < 3; ++c)
        sum += std::abs(rendered.at(y, x, c) - target.at(y, x, c));
    }
  if (valid_count == 0)
    throw std::invalid_argument("photometric_loss: no valid pixels");
  return sum / static_cast<double>(valid_count);
}

double depth_smoothness_loss(std::span<const RayContribution> contribs) {
  if (contribs.empty()) return 0.0;
  double sum = 0.0;
  for (const RayContribution& ray : contribs) {
    const size_t n = ray.hits.size();
    for (size_t i = 0; i + 1 < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        sum += ray.omegas[i] * ray.omegas[j] *
               std::abs(ray.hits[i].depth - ray.hits[j].depth);
  }
  return sum / static_cast<double>(contribs.size());
}

double normal_consistency_loss(std::span<const RayContribution> contribs,
                               std::span<const Vec3> surfel_normals,
                               const ImageD& dominant_normal,
                               const ImageB& normal_valid) {
  const int h = dominant_normal.height(), w = dominant_normal.width();
  if (static_cast<int64_t>(contribs.size()) != int64_t{h} * w)
    throw std::invalid_argument(
        "normal_consistency_loss: contribution count != pixel count");

  double sum = 0.0;
  int64_t valid_count = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!normal_valid.at(y, x)) continue;
      ++valid_count;
      const Vec3 dominant(dominant_normal.at(y, x, 0),
                          dominant_normal.at(y, x, 1),
                          dominant_normal.at(y, x, 2));
      const RayContribution& ray = contribs[static_cast<size_t>(y) * w + x];
      for (size_t i = 0; i < ray.hits.size(); ++i)
        sum += ray.omegas[i] *
               (1.0 - surfel_normals[ray.hits[i].surfel_index].dot(dominant));
    }
  return valid_count == 0 ? 0.0 : sum / static_cast<double>(valid_count);
}

double softmax_cross_entropy(std::span<const double> logits, int label) {
  double max_logit = logits[0];
  for (double v : logits) max_logit = std::max(max_logit, v);
  double exp_sum = 0.0;
  for (double v : logits) exp_sum += std::exp(v - max_logit);
  return max_logit + std::log(exp_sum) - logits[label];
}

double semantic_loss(const ImageD& rendered_semantic, const ImageI& label_map,
                     const ImageB& valid_mask) {
  const int h = rendered_semantic.height(), w = rendered_semantic.width();
  const int classes = rendered_semantic.channels();
  if (label_map.height() != h || label_map.width() != w ||
      valid_mask.height() != h || valid_mask.width() != w)
    throw std::invalid_argument("semantic_loss: buffer shapes differ");

  double sum = 0.0;
  int64_t valid_count = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!valid_mask.at(y, x)) continue;
      const int label = label_map.at(y, x);
      if (label < 0 || label >= classes)
        throw std::invalid_argument("semantic_loss: label out of range");
      ++valid_count;
      sum += softmax_cross_entropy(
          std::span<const double>(rendered_semantic.pixel(y, x), classes),
          label);
    }
  if (valid_count == 0)
    throw std::invalid_argument("semantic_loss: no valid pixels");
  return sum / static_cast<double>(valid_count);
}

LossBreakdown total_loss(const Scene& scene, const RenderOutput& render_out,
                         const SupervisionData& supervision,
                         const LossWeights& weights) {
  LossBreakdown breakdown;
  breakdown.photometric =
      photometric_loss(render_out.color, supervision.target, supervision.valid);
  breakdown.depth_smooth = depth_smoothness_loss(render_out.contributions);
  const std::vector<Vec3> normals = surfel_normals(scene);
  breakdown.normal_consistency = normal_consistency_loss(
      render_out.contributions, normals, render_out.dominant_normal,
      render_out.normal_valid);
  bool any_semantic = false;
  for (int y = 0; y < supervision.semantic_valid.height() && !any_semantic; ++y)
    for (int x = 0; x < supervision.semantic_valid.width(); ++x)
      if (supervision.semantic_valid.at(y, x)) {
        any_semantic = true;
        break;
      }
  breakdown.semantic =
      any_semantic ? semantic_loss(render_out.semantic, supervision.labels,
                                   supervision.semantic_valid)
                   : 0.0;
  breakdown.total = weights.lambda_c * breakdown.photometric +
                    weights.lambda_d * breakdown.depth_smooth +
                    weights.lambda_n * breakdown.normal_consistency +
                    weights.lambda_s * breakdown.semantic;
  return breakdown;
}

}  // namespace roadsurfel
