#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ifs {

// Row-major 8-bit image; row 0 is the top of the picture.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0);
    std::uint8_t& at(int col, int row) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    std::uint8_t at(int col, int row) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    RgbImage() = default;
    RgbImage(int w, int h, Rgb fill = {});
    Rgb& at(int col, int row) { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

void write_pgm(std::ostream& out, const GrayImage& image);
void write_ppm(std::ostream& out, const RgbImage& image);
void write_pgm(const std::string& path, const GrayImage& image);
void write_ppm(const std::string& path, const RgbImage& image);

GrayImage read_pgm(std::istream& in);

} // namespace ifs
