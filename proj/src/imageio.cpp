#include "geocorr/imageio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace geocorr {

VectorField image_to_field(const RgbImage& img) {
    if (img.width <= 0 || img.height <= 0 || img.pixels.size() != 3 * img.pixel_count())
        throw std::invalid_argument("image_to_field: empty or inconsistent image");
    std::vector<Vec3> values;
    values.reserve(img.pixel_count());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        values.push_back({img.pixels[3 * i + 0] / 255.0 - 0.5,
                          img.pixels[3 * i + 1] / 255.0 - 0.5,
                          img.pixels[3 * i + 2] / 255.0 - 0.5});
    }
    return {2, {img.height, img.width, 1}, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}, std::move(values)};
}

namespace {

std::uint8_t to_channel(double v) {
    const double scaled = (v + 0.5) * 255.0;
    // nearbyint under the default rounding mode is half-to-even
    const double rounded = std::nearbyint(scaled);
    return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

}  // namespace

RgbImage field_to_image(const VectorField& f) {
    if (f.rank() != 2) throw std::invalid_argument("field_to_image: need a 2D grid");
    RgbImage img;
    img.height = f.dims()[0];
    img.width = f.dims()[1];
    img.pixels.reserve(3 * f.size());
    for (const Vec3& v : f.values()) {
        img.pixels.push_back(to_channel(v.x));
        img.pixels.push_back(to_channel(v.y));
        img.pixels.push_back(to_channel(v.z));
    }
    return img;
}

VectorField distort_color_space(const VectorField& f, const RotationSpec& rot) {
    return apply_outer_rotation(f, rot);
}

namespace {

int read_pnm_token(std::istream& in, const std::string& path) {
    // skip whitespace and '#' comments between header fields
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c))
        throw std::runtime_error(path + ": malformed PPM header");
    long value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        if (value > 1 << 20) throw std::runtime_error(path + ": PPM header value out of range");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return static_cast<int>(value);
}

}  // namespace

RgbImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '6') throw std::runtime_error(path + ": not a binary PPM (P6) file");
    RgbImage img;
    img.width = read_pnm_token(in, path);
    img.height = read_pnm_token(in, path);
    const int maxval = read_pnm_token(in, path);
    if (img.width <= 0 || img.height <= 0)
        throw std::runtime_error(path + ": invalid PPM dimensions");
    if (maxval != 255) throw std::runtime_error(path + ": only maxval 255 PPMs are supported");
    in.get();  // the single whitespace byte before the raster
    img.pixels.resize(3 * img.pixel_count());
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw std::runtime_error(path + ": truncated PPM raster");
    return img;
}

void write_ppm(const std::string& path, const RgbImage& img) {
    if (img.width <= 0 || img.height <= 0 || img.pixels.size() != 3 * img.pixel_count())
        throw std::invalid_argument("write_ppm: empty or inconsistent image");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

RgbImage synthetic_image(int width, int height, std::uint64_t seed) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("synthetic_image: dimensions must be positive");
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    // smooth phase offsets per channel
    const double px = 2.0 * kPi * uniform();
    const double py = 2.0 * kPi * uniform();
    const double pz = 2.0 * kPi * uniform();

    RgbImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(3 * img.pixel_count());
    for (int y = 0; y < height; ++y) {
        const double fy = static_cast<double>(y) / height;
        for (int x = 0; x < width; ++x) {
            const double fx = static_cast<double>(x) / width;
            const double r = 0.5 + 0.45 * std::sin(2.0 * kPi * fx + px) * std::cos(kPi * fy);
            const double g = 0.5 + 0.45 * std::sin(2.0 * kPi * fy + py) * std::cos(kPi * fx);
            const double b = 0.5 + 0.45 * std::sin(2.0 * kPi * (fx + fy) + pz);
            const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
            img.pixels[i + 0] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(r, 0.0, 1.0)));
            img.pixels[i + 1] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(g, 0.0, 1.0)));
            img.pixels[i + 2] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(b, 0.0, 1.0)));
        }
    }

    // a handful of saturated patches so all channels see full range
    const int patches = 6;
    for (int p = 0; p < patches; ++p) {
        const int pw = std::max(1, static_cast<int>(width * (0.05 + 0.15 * uniform())));
        const int ph = std::max(1, static_cast<int>(height * (0.05 + 0.15 * uniform())));
        const int x0 = static_cast<int>((width - pw) * uniform());
        const int y0 = static_cast<int>((height - ph) * uniform());
        const std::uint8_t cr = (p % 3 == 0) ? 255 : static_cast<std::uint8_t>(255 * uniform());
        const std::uint8_t cg = (p % 3 == 1) ? 255 : static_cast<std::uint8_t>(255 * uniform());
        const std::uint8_t cb = (p % 3 == 2) ? 255 : static_cast<std::uint8_t>(255 * uniform());
        for (int y = y0; y < y0 + ph && y < height; ++y) {
            for (int x = x0; x < x0 + pw && x < width; ++x) {
                const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
                img.pixels[i + 0] = cr;
                img.pixels[i + 1] = cg;
                img.pixels[i + 2] = cb;
            }
        }
    }
    return img;
}

}  // namespace geocorr
