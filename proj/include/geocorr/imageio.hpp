#ifndef GEOCORR_IMAGEIO_HPP
#define GEOCORR_IMAGEIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "geocorr/field.hpp"

// RGB images as 3D vector fields over a 2D grid: red, green and blue map
// to e1, e2, e3 with each channel scaled to [-0.5, 0.5]. Binary PPM (P6,
// maxval 255) is the on-disk format.

namespace geocorr {

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // interleaved rgb, row-major

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

/// Channel map c/255 - 0.5 per pixel; grid spacing 1, origin (0,0).
VectorField image_to_field(const RgbImage& img);

/// Inverse channel map with clamping to [0,255]; rounding is half-to-even.
RgbImage field_to_image(const VectorField& f);

/// Outer rotation of the color values; pixel positions stay put.
VectorField distort_color_space(const VectorField& f, const RotationSpec& rot);

RgbImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbImage& img);

/// Deterministic test image: smooth per-channel gradients with a few
/// saturated rectangular patches, balanced across all three channels.
RgbImage synthetic_image(int width, int height, std::uint64_t seed);

}  // namespace geocorr

#endif  // GEOCORR_IMAGEIO_HPP
