#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "tanplane/classify.hpp"
#include "tanplane/kernel.hpp"

namespace tanplane {

struct Region {
    Complex center;
    double width = 6.0;
    double height = 6.0;
};

template <class Pixel>
struct Raster {
    int width_px = 0;
    int height_px = 0;
    Region region;
    std::vector<Pixel> pixels;  // row-major, row 0 at the top

    const Pixel& at(int i, int j) const { return pixels[static_cast<std::size_t>(j) * width_px + i]; }
};

using ParameterRaster = Raster<Classification>;
using DynamicRaster = Raster<OrbitOutcome>;

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Centre of pixel (i, j); symmetric grids map to exactly negated points.
Complex pixel_center(const Region& region, int width_px, int height_px, int i, int j);

// Runs fn(row) for every row on `threads` workers (0 = hardware concurrency).
void parallel_rows(int rows, int threads, const std::function<void(int)>& fn);

ParameterRaster render_parameter_plane(const Region& region, int width_px, int height_px,
                                       int budget = kDefaultClassifyBudget, int threads = 0);
DynamicRaster render_dynamic_plane(Complex lambda, const Region& region, int width_px, int height_px,
                                   int budget = kDefaultClassifyBudget, int threads = 0);

Rgb default_color(const Classification& c);
Rgb default_color(const OrbitOutcome& o);

std::string encode_ppm(int width_px, int height_px, const std::vector<Rgb>& rgb);

template <class Pixel>
std::string encode_ppm(const Raster<Pixel>& raster, const std::function<Rgb(const Pixel&)>& colormap) {
    std::vector<Rgb> rgb;
    rgb.reserve(raster.pixels.size());
    for (const Pixel& p : raster.pixels) rgb.push_back(colormap(p));
    return encode_ppm(raster.width_px, raster.height_px, rgb);
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes);

template <class Pixel>
void write_ppm(const Raster<Pixel>& raster, const std::function<Rgb(const Pixel&)>& colormap,
               const std::filesystem::path& path) {
    write_bytes(path, encode_ppm(raster, colormap));
}

// Presentation-only image: each output pixel averages the colours of a 2x2 sub-grid.
std::vector<Rgb> supersampled_parameter_image(const Region& region, int width_px, int height_px, int budget,
                                              int threads = 0);

struct CsvRow {
    int i = 0, j = 0;
    double re = 0.0, im = 0.0;
    std::string tag;
    std::string index;           // depth, period or step; empty when not applicable
    std::string mod_multiplier;  // empty when not applicable
};

std::string encode_grid_csv(const ParameterRaster& raster);
std::string encode_grid_csv(const DynamicRaster& raster, Complex lambda);
void write_grid_csv(const ParameterRaster& raster, const std::filesystem::path& path);
std::vector<CsvRow> parse_grid_csv(const std::string& text);

}  // namespace tanplane
