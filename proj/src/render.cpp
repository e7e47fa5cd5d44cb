#include "tanplane/render.hpp"

#include <array>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tanplane {

namespace {

// 16-step ramp for capture depth, dark blue through yellow
constexpr std::array<Rgb, 16> kDepthRamp = {{
    {20, 30, 90},   {30, 50, 120},  {40, 70, 150},  {50, 95, 175},
    {60, 120, 195}, {70, 145, 205}, {85, 170, 205}, {105, 190, 195},
    {130, 205, 180}, {160, 215, 160}, {190, 222, 140}, {215, 225, 120},
    {235, 220, 100}, {245, 205, 85}, {250, 185, 75}, {252, 160, 70},
}};

constexpr std::array<Rgb, 12> kPeriodPalette = {{
    {228, 26, 28},  {255, 127, 0},  {77, 175, 74},  {152, 78, 163},
    {166, 86, 40},  {247, 129, 191}, {153, 153, 153}, {255, 255, 51},
    {55, 126, 184}, {102, 194, 165}, {141, 160, 203}, {231, 138, 195},
}};

void check_dims(int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("raster dimensions must be >= 1");
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void append_row(std::string& out, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out += ',';
        out += quote(f);
        first = false;
    }
    out += "\r\n";
}

}  // namespace

Complex pixel_center(const Region& region, int width_px, int height_px, int i, int j) {
    const double re = region.center.real() + region.width * (2.0 * i + 1.0 - width_px) / (2.0 * width_px);
    const double im = region.center.imag() - region.height * (2.0 * j + 1.0 - height_px) / (2.0 * height_px);
    return {re, im};
}

void parallel_rows(int rows, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, rows);
    if (threads <= 1) {
        for (int j = 0; j < rows; ++j) fn(j);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                try {
                    for (int j = next++; j < rows; j = next++) fn(j);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = rows;
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

ParameterRaster render_parameter_plane(const Region& region, int width_px, int height_px, int budget, int threads) {
    check_dims(width_px, height_px);
    ParameterRaster out{width_px, height_px, region, {}};
    out.pixels.resize(static_cast<std::size_t>(width_px) * height_px);
    parallel_rows(height_px, threads, [&](int j) {
        for (int i = 0; i < width_px; ++i) {
            const Complex lambda = pixel_center(region, width_px, height_px, i, j);
            out.pixels[static_cast<std::size_t>(j) * width_px + i] =
                lambda == Complex(0.0, 0.0) ? Classification::unresolved(UnresolvedReason::None) : classify(lambda, budget);
        }
    });
    return out;
}

DynamicRaster render_dynamic_plane(Complex lambda, const Region& region, int width_px, int height_px, int budget,
                                   int threads) {
    check_dims(width_px, height_px);
    const double r0 = zero_trap_radius(lambda);
    DynamicRaster out{width_px, height_px, region, {}};
    out.pixels.resize(static_cast<std::size_t>(width_px) * height_px);
    parallel_rows(height_px, threads, [&](int j) {
        for (int i = 0; i < width_px; ++i) {
            const Complex z = pixel_center(region, width_px, height_px, i, j);
            out.pixels[static_cast<std::size_t>(j) * width_px + i] = orbit(lambda, z, budget, r0);
        }
    });
    return out;
}

Rgb default_color(const Classification& c) {
    switch (c.tag) {
        case Verdict::CaptureDepth: return kDepthRamp[static_cast<std::size_t>(c.depth) % kDepthRamp.size()];
        case Verdict::Shell: return kPeriodPalette[static_cast<std::size_t>(c.period - 1) % kPeriodPalette.size()];
        case Verdict::Unresolved: break;
    }
    return {0, 0, 0};
}

Rgb default_color(const OrbitOutcome& o) {
    switch (o.tag) {
        case OrbitTag::TrapEntry: return kDepthRamp[static_cast<std::size_t>(o.step) % kDepthRamp.size()];
        case OrbitTag::CycleCandidate:
            return kPeriodPalette[static_cast<std::size_t>(o.period - 1) % kPeriodPalette.size()];
        case OrbitTag::PoleHit: return {255, 255, 255};
        case OrbitTag::Escaped: return {90, 90, 90};
        case OrbitTag::Exhausted: break;
    }
    return {0, 0, 0};
}

std::string encode_ppm(int width_px, int height_px, const std::vector<Rgb>& rgb) {
    check_dims(width_px, height_px);
    if (rgb.size() != static_cast<std::size_t>(width_px) * height_px) throw std::invalid_argument("pixel count mismatch");
    std::string out = "P6\n" + std::to_string(width_px) + " " + std::to_string(height_px) + "\n255\n";
    out.reserve(out.size() + 3 * rgb.size());
    for (const Rgb& c : rgb) {
        out += static_cast<char>(c.r);
        out += static_cast<char>(c.g);
        out += static_cast<char>(c.b);
    }
    return out;
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<Rgb> supersampled_parameter_image(const Region& region, int width_px, int height_px, int budget,
                                              int threads) {
    const ParameterRaster fine = render_parameter_plane(region, 2 * width_px, 2 * height_px, budget, threads);
    std::vector<Rgb> out;
    out.reserve(static_cast<std::size_t>(width_px) * height_px);
    for (int j = 0; j < height_px; ++j)
        for (int i = 0; i < width_px; ++i) {
            int r = 0, g = 0, b = 0;
            for (int dj = 0; dj < 2; ++dj)
                for (int di = 0; di < 2; ++di) {
                    const Rgb c = default_color(fine.at(2 * i + di, 2 * j + dj));
                    r += c.r, g += c.g, b += c.b;
                }
            out.push_back({static_cast<std::uint8_t>((r + 2) / 4), static_cast<std::uint8_t>((g + 2) / 4),
                           static_cast<std::uint8_t>((b + 2) / 4)});
        }
    return out;
}

std::string encode_grid_csv(const ParameterRaster& raster) {
    std::string out;
    append_row(out, {"i", "j", "re", "im", "tag", "index", "mod_multiplier"});
    for (int j = 0; j < raster.height_px; ++j)
        for (int i = 0; i < raster.width_px; ++i) {
            const Classification& c = raster.at(i, j);
            const Complex lambda = pixel_center(raster.region, raster.width_px, raster.height_px, i, j);
            std::string index, mod;
            if (c.tag == Verdict::CaptureDepth) index = std::to_string(c.depth);
            if (c.tag == Verdict::Shell) {
                index = std::to_string(c.period);
                mod = number(std::abs(c.multiplier));
            }
            append_row(out, {std::to_string(i), std::to_string(j), number(lambda.real()), number(lambda.imag()),
                             to_string(c.tag), index, mod});
        }
    return out;
}

std::string encode_grid_csv(const DynamicRaster& raster, Complex lambda) {
    std::string out;
    append_row(out, {"i", "j", "re", "im", "tag", "index", "mod_multiplier"});
    for (int j = 0; j < raster.height_px; ++j)
        for (int i = 0; i < raster.width_px; ++i) {
            const OrbitOutcome& o = raster.at(i, j);
            const Complex z = pixel_center(raster.region, raster.width_px, raster.height_px, i, j);
            std::string index = o.tag == OrbitTag::CycleCandidate ? std::to_string(o.period) : std::to_string(o.step);
            std::string mod;
            if (o.tag == OrbitTag::CycleCandidate) {
                Complex rho = 1.0;
                for (const Complex& w : o.candidate) rho *= eval_df(lambda, w);
                mod = number(std::abs(rho));
            }
            append_row(out, {std::to_string(i), std::to_string(j), number(z.real()), number(z.imag()),
                             to_string(o.tag), index, mod});
        }
    return out;
}

void write_grid_csv(const ParameterRaster& raster, const std::filesystem::path& path) {
    write_bytes(path, encode_grid_csv(raster));
}

std::vector<CsvRow> parse_grid_csv(const std::string& text) {
    // minimal RFC 4180 reader
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false, any = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (quoted) {
            if (c == '"' && k + 1 < text.size() && text[k + 1] == '"') cur += '"', ++k;
            else if (c == '"') quoted = false;
            else cur += c;
            continue;
        }
        if (c == '"') quoted = true, any = true;
        else if (c == ',') fields.push_back(std::move(cur)), cur.clear(), any = true;
        else if (c == '\r') continue;
        else if (c == '\n') {
            fields.push_back(std::move(cur));
            records.push_back(std::move(fields));
            fields.clear(), cur.clear(), any = false;
        } else cur += c, any = true;
    }
    if (any) fields.push_back(std::move(cur)), records.push_back(std::move(fields));

    if (records.empty()) throw std::runtime_error("csv: empty input");
    std::vector<CsvRow> rows;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& f = records[r];
        if (f.size() != 7) throw std::runtime_error("csv: expected 7 fields on row " + std::to_string(r));
        rows.push_back({std::stoi(f[0]), std::stoi(f[1]), std::stod(f[2]), std::stod(f[3]), f[4], f[5], f[6]});
    }
    return rows;
}

}  // namespace tanplane
