#pragma once

// Minimal netpbm I/O. Frames and masks are written as binary PGM (P5) or
// PPM (P6), maxval 255. Writes go to a ".tmp" sibling first and are renamed
// into place, so a crashed run never leaves a torn frame. The reader accepts
// P2 and P5 for masks and substrate images.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "physarum/errors.hpp"
#include "physarum/grid.hpp"

namespace physarum {

struct Image8 {
    int width = 0;
    int height = 0;
    int channels = 1; // 1 = PGM, 3 = PPM
    std::vector<std::uint8_t> pixels;

    Image8() = default;
    Image8(int w, int h, int c)
        : width(w), height(h), channels(c),
          pixels(static_cast<std::size_t>(w) * h * c, 0) {}

    std::uint8_t& at(int x, int y, int c = 0) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t at(int x, int y, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

inline void write_netpbm(const Image8& image, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << (image.channels == 3 ? "P6\n" : "P5\n")
            << image.width << ' ' << image.height << "\n255\n";
        out.write(reinterpret_cast<const char*>(image.pixels.data()),
                  static_cast<std::streamsize>(image.pixels.size()));
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

namespace detail {
inline int next_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments, returns a non-negative integer
    while (true) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c != std::char_traits<char>::eof() &&
                   std::isspace(static_cast<unsigned char>(c))) {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    in >> value;
    if (!in || value < 0) throw IoError("malformed netpbm header");
    return value;
}
} // namespace detail

inline Image8 read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string magic(2, '\0');
    in.read(magic.data(), 2);
    if (!in || (magic != "P5" && magic != "P2"))
        throw IoError("'" + path.string() + "' is not a P2/P5 PGM");
    const int width = detail::next_pnm_token(in);
    const int height = detail::next_pnm_token(in);
    const int maxval = detail::next_pnm_token(in);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 255)
        throw IoError("'" + path.string() + "' has an unsupported geometry");
    Image8 image(width, height, 1);
    if (magic == "P5") {
        in.get(); // single whitespace after maxval
        in.read(reinterpret_cast<char*>(image.pixels.data()),
                static_cast<std::streamsize>(image.pixels.size()));
        if (!in) throw IoError("'" + path.string() + "' truncated");
    } else {
        for (auto& px : image.pixels) {
            const int v = detail::next_pnm_token(in);
            px = static_cast<std::uint8_t>(v > maxval ? maxval : v);
        }
    }
    return image;
}

// mask convention for loaded layers: zero = clear, any nonzero = set
inline BinaryMask to_mask(const Image8& image) {
    BinaryMask mask(image.width, image.height, 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = image.pixels[i * image.channels] ? 1 : 0;
    return mask;
}

inline Image8 mask_to_image(const BinaryMask& mask) {
    Image8 image(mask.width(), mask.height(), 1);
    for (std::size_t i = 0; i < mask.size(); ++i)
        image.pixels[i] = mask[i] ? 255 : 0;
    return image;
}

} // namespace physarum
