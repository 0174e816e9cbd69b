// Copyright 2026 The qia Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qia/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qia/errors.hpp"

namespace qia {

std::uint8_t to_uint8(double v) {
    const double clamped = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
    return static_cast<std::uint8_t>(std::round(clamped));
}

namespace {

int pnm_next_value(std::istream& in) {
    // Skips whitespace and '#' comments between header tokens.
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (c != EOF && std::isspace(static_cast<unsigned char>(c))) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) {
        throw IoError("truncated PNM header");
    }
    return value;
}

ImageBuffer read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P') {
        throw IoError("not a PNM file: " + path.string());
    }
    const char kind = magic[1];
    const bool color = kind == '3' || kind == '6';
    const bool ascii = kind == '2' || kind == '3';
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
        throw IoError("unsupported PNM variant in " + path.string());
    }
    const int width = pnm_next_value(in);
    const int height = pnm_next_value(in);
    const int maxval = pnm_next_value(in);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
        throw IoError("unsupported PNM geometry in " + path.string());
    }
    const std::size_t channels = color ? 3 : 1;
    ImageBuffer img(channels, static_cast<std::size_t>(height), static_cast<std::size_t>(width));
    const std::size_t count = img.rows() * img.cols() * channels;
    if (ascii) {
        for (std::size_t i = 0; i < count; ++i) {
            int v = 0;
            if (!(in >> v)) throw IoError("truncated PNM data in " + path.string());
            img.channels[i % channels].data[i / channels] = v;
        }
    } else {
        in.get();  // single whitespace after maxval
        std::vector<unsigned char> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count) {
            throw IoError("truncated PNM data in " + path.string());
        }
        for (std::size_t i = 0; i < count; ++i) {
            img.channels[i % channels].data[i / channels] = raw[i];
        }
    }
    return img;
}

void write_pnm(const std::filesystem::path& path, const ImageBuffer& img) {
    const bool color = img.channels.size() == 3;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << (color ? "P6\n" : "P5\n") << img.cols() << ' ' << img.rows() << "\n255\n";
    const std::size_t pixels = img.rows() * img.cols();
    std::vector<unsigned char> raw(pixels * img.channels.size());
    for (std::size_t i = 0; i < pixels; ++i) {
        for (std::size_t c = 0; c < img.channels.size(); ++c) {
            raw[i * img.channels.size() + c] = to_uint8(img.channels[c].data[i]);
        }
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw IoError("short write to " + path.string());
    }
}

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* file = nullptr;
    ~PngReadCloser() {
        if (png != nullptr) png_destroy_read_struct(&png, info != nullptr ? &info : nullptr, nullptr);
        if (file != nullptr) std::fclose(file);
    }
};

ImageBuffer read_png(const std::filesystem::path& path) {
    PngReadCloser ctx;
    ctx.file = std::fopen(path.c_str(), "rb");
    if (ctx.file == nullptr) {
        throw IoError("cannot open " + path.string());
    }
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (ctx.png == nullptr) throw IoError("libpng init failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (ctx.info == nullptr) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(ctx.png))) {
        throw IoError("failed to decode " + path.string());
    }
    png_init_io(ctx.png, ctx.file);
    png_read_info(ctx.png, ctx.info);

    // Normalize everything to 8-bit gray or RGB.
    png_set_strip_16(ctx.png);
    png_set_strip_alpha(ctx.png);
    png_set_palette_to_rgb(ctx.png);
    png_set_expand_gray_1_2_4_to_8(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    const png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
    const png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
    const png_byte color_type = png_get_color_type(ctx.png, ctx.info);
    const std::size_t channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
    if (color_type != PNG_COLOR_TYPE_RGB && color_type != PNG_COLOR_TYPE_GRAY) {
        throw IoError("unsupported PNG color type in " + path.string());
    }

    std::vector<png_byte> row(png_get_rowbytes(ctx.png, ctx.info));
    ImageBuffer img(channels, height, width);
    for (png_uint_32 r = 0; r < height; ++r) {
        png_read_row(ctx.png, row.data(), nullptr);
        for (png_uint_32 c = 0; c < width; ++c) {
            for (std::size_t ch = 0; ch < channels; ++ch) {
                img.channels[ch].at(r, c) = row[c * channels + ch];
            }
        }
    }
    return img;
}

struct PngWriteCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    std::FILE* file = nullptr;
    ~PngWriteCloser() {
        if (png != nullptr) png_destroy_write_struct(&png, info != nullptr ? &info : nullptr);
        if (file != nullptr) std::fclose(file);
    }
};

void write_png(const std::filesystem::path& path, const ImageBuffer& img) {
    PngWriteCloser ctx;
    ctx.file = std::fopen(path.c_str(), "wb");
    if (ctx.file == nullptr) {
        throw IoError("cannot write " + path.string());
    }
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (ctx.png == nullptr) throw IoError("libpng init failed");
    ctx.info = png_create_info_struct(ctx.png);
    if (ctx.info == nullptr) throw IoError("libpng init failed");
    if (setjmp(png_jmpbuf(ctx.png))) {
        throw IoError("failed to encode " + path.string());
    }
    png_init_io(ctx.png, ctx.file);
    const bool color = img.channels.size() == 3;
    png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(img.cols()),
                 static_cast<png_uint_32>(img.rows()), 8,
                 color ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);

    const std::size_t channels = img.channels.size();
    std::vector<png_byte> row(img.cols() * channels);
    for (std::size_t r = 0; r < img.rows(); ++r) {
        for (std::size_t c = 0; c < img.cols(); ++c) {
            for (std::size_t ch = 0; ch < channels; ++ch) {
                row[c * channels + ch] = to_uint8(img.channels[ch].at(r, c));
            }
        }
        png_write_row(ctx.png, row.data());
    }
    png_write_end(ctx.png, nullptr);
}

std::string lower_ext(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

}  // namespace

ImageBuffer read_image(const std::filesystem::path& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) {
        throw IoError("cannot open " + path.string());
    }
    unsigned char magic[8] = {};
    probe.read(reinterpret_cast<char*>(magic), 8);
    probe.close();
    if (magic[0] == 0x89 && magic[1] == 'P' && magic[2] == 'N' && magic[3] == 'G') {
        return read_png(path);
    }
    if (magic[0] == 'P' && magic[1] >= '2' && magic[1] <= '6') {
        return read_pnm(path);
    }
    throw IoError("unrecognized image format: " + path.string());
}

void write_image(const std::filesystem::path& path, const ImageBuffer& img) {
    img.require_consistent();
    if (img.channels.size() != 1 && img.channels.size() != 3) {
        throw InvalidInputError("image files hold 1 or 3 channels, got " +
                                std::to_string(img.channels.size()));
    }
    const std::string ext = lower_ext(path);
    if (ext == ".png") {
        write_png(path, img);
    } else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
        write_pnm(path, img);
    } else {
        throw InvalidInputError("unsupported output extension '" + ext + "'");
    }
}

bool is_image_file(const std::filesystem::path& path) {
    const std::string ext = lower_ext(path);
    return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

}  // namespace qia
