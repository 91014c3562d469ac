#include "hamflow/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "hamflow/error.hpp"

namespace hamflow {

namespace {

constexpr char kCacheMagic[8] = {'H', 'A', 'M', 'F', 'L', 'D', '0', '1'};

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open file: " + path);
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, const void* data, std::size_t len) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DataError("cannot open file for writing: " + path);
    }
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out) {
        throw DataError("write failed: " + path);
    }
}

// PNM token scanner: skips whitespace and '#' comments.
class PnmScanner {
  public:
    PnmScanner(const unsigned char* data, std::size_t len) : data_(data), len_(len) {}

    std::uint32_t next_uint(const std::string& path) {
        skip_space_and_comments();
        if (pos_ >= len_ || !std::isdigit(data_[pos_])) {
            throw DataError("unsupported/corrupt format (truncated PGM header): " + path);
        }
        std::uint64_t v = 0;
        while (pos_ < len_ && std::isdigit(data_[pos_])) {
            v = v * 10 + (data_[pos_] - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) {
                throw DataError("unsupported/corrupt format (oversized PGM value): " + path);
            }
            ++pos_;
        }
        return static_cast<std::uint32_t>(v);
    }

    // P5 raster starts after exactly one whitespace byte.
    std::size_t raster_offset() const { return pos_ + 1; }
    std::size_t pos() const { return pos_; }

  private:
    void skip_space_and_comments() {
        while (pos_ < len_) {
            if (std::isspace(data_[pos_])) {
                ++pos_;
            } else if (data_[pos_] == '#') {
                while (pos_ < len_ && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const unsigned char* data_;
    std::size_t len_;
    std::size_t pos_ = 0;
};

ScalarField finish_dims(std::uint32_t w, std::uint32_t h, const std::string& path) {
    if (w < 2 || h < 2) {
        throw DataError("zero-dimension or degenerate image (min dim 2): " + path);
    }
    if (static_cast<std::uint64_t>(w) * h > (1ull << 28)) {
        throw DataError("image too large: " + path);
    }
    return ScalarField(static_cast<int>(w), static_cast<int>(h));
}

ScalarField parse_pgm(const std::vector<unsigned char>& bytes, bool binary,
                      const std::string& path) {
    PnmScanner scan(bytes.data() + 2, bytes.size() - 2);  // past "P5"/"P2"
    const std::uint32_t w = scan.next_uint(path);
    const std::uint32_t h = scan.next_uint(path);
    const std::uint32_t maxval = scan.next_uint(path);
    if (maxval == 0 || maxval > 65535) {
        throw DataError("unsupported/corrupt format (PGM maxval " + std::to_string(maxval) +
                        "): " + path);
    }
    ScalarField out = finish_dims(w, h, path);
    const double scale = 255.0 / static_cast<double>(maxval);
    const std::size_t count = out.size();

    if (binary) {
        const std::size_t raster = 2 + scan.raster_offset();
        const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
        if (raster + count * bytes_per_sample > bytes.size()) {
            throw DataError("unsupported/corrupt format (truncated PGM raster): " + path);
        }
        const unsigned char* p = bytes.data() + raster;
        for (std::size_t i = 0; i < count; ++i) {
            std::uint32_t raw;
            if (bytes_per_sample == 2) {
                raw = (static_cast<std::uint32_t>(p[2 * i]) << 8) | p[2 * i + 1];  // big-endian per PNM
            } else {
                raw = p[i];
            }
            out.values[i] = raw * scale;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            out.values[i] = scan.next_uint(path) * scale;
        }
    }
    return out;
}

// -- PNG ---------------------------------------------------------------

struct PngReadState {
    const unsigned char* data;
    std::size_t len;
    std::size_t pos;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->pos + n > st->len) {
        png_error(png, "truncated PNG");
    }
    std::memcpy(out, st->data + st->pos, n);
    st->pos += n;
}

ScalarField parse_png(const std::vector<unsigned char>& bytes, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DataError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DataError("libpng init failed");
    }

    std::vector<unsigned char> pixels;
    std::vector<png_bytep> rows;
    std::uint32_t w = 0, h = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("unsupported/corrupt format (PNG decode error): " + path);
    }

    PngReadState st{bytes.data(), bytes.size(), 0};
    png_set_read_fn(png, &st, png_mem_read);
    png_read_info(png, info);

    w = png_get_image_width(png, info);
    h = png_get_image_height(png, info);
    const int color = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);

    if (color != PNG_COLOR_TYPE_GRAY || depth > 8) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("unsupported format (need 8-bit grayscale PNG): " + path);
    }
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    png_read_update_info(png, info);

    pixels.resize(static_cast<std::size_t>(w) * h);
    rows.resize(h);
    for (std::uint32_t r = 0; r < h; ++r) {
        rows[r] = pixels.data() + static_cast<std::size_t>(r) * w;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ScalarField out = finish_dims(w, h, path);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.values[i] = pixels[i];
    }
    return out;
}

void png_mem_write(png_structp png, png_bytep data, png_size_t n) {
    auto* buf = static_cast<std::vector<unsigned char>*>(png_get_io_ptr(png));
    buf->insert(buf->end(), data, data + n);
}

void png_mem_flush(png_structp) {}

std::vector<unsigned char> to_bytes_255(const ScalarField& f) {
    std::vector<unsigned char> row_bytes(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = std::lround(f.values[i]);
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        row_bytes[i] = static_cast<unsigned char>(v);
    }
    return row_bytes;
}

}  // namespace

ScalarField load_scalar_field(const std::string& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), kCacheMagic, 8) == 0) {
        return load_field_cache(path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2')) {
        return parse_pgm(bytes, bytes[1] == '5', path);
    }
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0) {
        return parse_png(bytes, path);
    }
    throw DataError("unsupported/corrupt format (not PGM, PNG, or field cache): " + path);
}

void save_field_cache(const ScalarField& f, const std::string& path) {
    std::vector<unsigned char> buf;
    buf.reserve(16 + f.size() * 8);
    buf.insert(buf.end(), kCacheMagic, kCacheMagic + 8);
    auto put_u32 = [&buf](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
    };
    put_u32(static_cast<std::uint32_t>(f.width));
    put_u32(static_cast<std::uint32_t>(f.height));
    for (double v : f.values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>((bits >> (8 * i)) & 0xff));
    }
    write_file(path, buf.data(), buf.size());
}

ScalarField load_field_cache(const std::string& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kCacheMagic, 8) != 0) {
        throw DataError("unsupported/corrupt format (bad field cache magic): " + path);
    }
    auto get_u32 = [&bytes](std::size_t off) {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[off + i]) << (8 * i);
        return v;
    };
    const std::uint32_t w = get_u32(8);
    const std::uint32_t h = get_u32(12);
    ScalarField out = finish_dims(w, h, path);
    if (bytes.size() != 16 + out.size() * 8) {
        throw DataError("unsupported/corrupt format (field cache size mismatch): " + path);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(bytes[16 + i * 8 + b]) << (8 * b);
        }
        double v;
        std::memcpy(&v, &bits, 8);
        out.values[i] = v;
    }
    validate(out, ("field cache " + path).c_str());
    return out;
}

void save_pgm(const ScalarField& f, const std::string& path) {
    const std::vector<unsigned char> pix = to_bytes_255(f);
    std::ostringstream header;
    header << "P5\n" << f.width << " " << f.height << "\n255\n";
    std::string out = header.str();
    out.append(reinterpret_cast<const char*>(pix.data()), pix.size());
    write_file(path, out.data(), out.size());
}

std::vector<unsigned char> encode_png(const ScalarField& f) {
    const std::vector<unsigned char> pix = to_bytes_255(f);
    std::vector<unsigned char> out;

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DataError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw DataError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw DataError("PNG encode error");
    }
    png_set_write_fn(png, &out, png_mem_write, png_mem_flush);
    png_set_IHDR(png, info, static_cast<png_uint_32>(f.width), static_cast<png_uint_32>(f.height),
                 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int r = 0; r < f.height; ++r) {
        png_write_row(png, const_cast<png_bytep>(pix.data() + static_cast<std::size_t>(r) * f.width));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

void save_png(const ScalarField& f, const std::string& path) {
    const std::vector<unsigned char> bytes = encode_png(f);
    write_file(path, bytes.data(), bytes.size());
}

}  // namespace hamflow
