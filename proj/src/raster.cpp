#include "ifs/raster.hpp"

#include "ifs/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace ifs {

GrayImage::GrayImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill)
{
}

RgbImage::RgbImage(int w, int h, Rgb fill) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

void write_pgm(std::ostream& out, const GrayImage& image)
{
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

void write_ppm(std::ostream& out, const RgbImage& image)
{
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    for (const auto& p : image.pixels) {
        const char rgb[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
        out.write(rgb, 3);
    }
}

static std::ofstream open_binary(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

void write_pgm(const std::string& path, const GrayImage& image)
{
    auto out = open_binary(path);
    write_pgm(out, image);
}

void write_ppm(const std::string& path, const RgbImage& image)
{
    auto out = open_binary(path);
    write_ppm(out, image);
}

GrayImage read_pgm(std::istream& in)
{
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (magic != "P5" || w <= 0 || h <= 0 || maxval != 255)
        throw ParseError("not an 8-bit P5 image");
    in.get();
    GrayImage image(w, h);
    in.read(reinterpret_cast<char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (!in)
        throw ParseError("truncated P5 image");
    return image;
}

} // namespace ifs
