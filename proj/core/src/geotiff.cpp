// Minimal classic-TIFF codec for single-band georeferenced rasters. The
// reader covers the layouts common tooling emits for grayscale GeoTIFFs
// (strips or tiles; none/LZW/Deflate/PackBits compression; uint, int and
// IEEE-float samples; horizontal predictor for integers). The writer emits
// uncompressed striped float32 with pixel-scale and tiepoint tags.

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <vector>

#include <zlib.h>

#include "sceneval/raster_io.hpp"

namespace sceneval {

namespace {

// TIFF tag ids.
constexpr std::uint16_t kImageWidth = 256;
constexpr std::uint16_t kImageLength = 257;
constexpr std::uint16_t kBitsPerSample = 258;
constexpr std::uint16_t kCompression = 259;
constexpr std::uint16_t kPhotometric = 262;
constexpr std::uint16_t kStripOffsets = 273;
constexpr std::uint16_t kSamplesPerPixel = 277;
constexpr std::uint16_t kRowsPerStrip = 278;
constexpr std::uint16_t kStripByteCounts = 279;
constexpr std::uint16_t kPlanarConfig = 284;
constexpr std::uint16_t kPredictor = 317;
constexpr std::uint16_t kTileWidth = 322;
constexpr std::uint16_t kTileLength = 323;
constexpr std::uint16_t kTileOffsets = 324;
constexpr std::uint16_t kTileByteCounts = 325;
constexpr std::uint16_t kSampleFormat = 339;
constexpr std::uint16_t kModelPixelScale = 33550;
constexpr std::uint16_t kModelTiepoint = 33922;
constexpr std::uint16_t kModelTransformation = 34264;

constexpr std::uint16_t kCompressionNone = 1;
constexpr std::uint16_t kCompressionLzw = 5;
constexpr std::uint16_t kCompressionDeflate = 8;
constexpr std::uint16_t kCompressionDeflateOld = 32946;
constexpr std::uint16_t kCompressionPackBits = 32773;

constexpr std::uint16_t kFormatUnsigned = 1;
constexpr std::uint16_t kFormatSigned = 2;
constexpr std::uint16_t kFormatFloat = 3;

class ByteReader {
public:
    ByteReader(std::vector<std::uint8_t> bytes, const std::string& name)
        : bytes_(std::move(bytes)), name_(name) {}

    void set_big_endian(bool big) { big_endian_ = big; }
    std::size_t size() const { return bytes_.size(); }
    const std::string& name() const { return name_; }

    std::uint8_t u8(std::size_t off) const {
        check(off, 1);
        return bytes_[off];
    }
    std::uint16_t u16(std::size_t off) const {
        check(off, 2);
        return big_endian_
                   ? static_cast<std::uint16_t>(bytes_[off] << 8 | bytes_[off + 1])
                   : static_cast<std::uint16_t>(bytes_[off + 1] << 8 | bytes_[off]);
    }
    std::uint32_t u32(std::size_t off) const {
        check(off, 4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            int shift = big_endian_ ? (3 - i) * 8 : i * 8;
            v |= static_cast<std::uint32_t>(bytes_[off + i]) << shift;
        }
        return v;
    }
    std::uint64_t u64(std::size_t off) const {
        std::uint64_t hi = u32(big_endian_ ? off : off + 4);
        std::uint64_t lo = u32(big_endian_ ? off + 4 : off);
        return hi << 32 | lo;
    }
    double f64(std::size_t off) const {
        std::uint64_t u = u64(off);
        double d;
        std::memcpy(&d, &u, 8);
        return d;
    }
    const std::uint8_t* data(std::size_t off, std::size_t len) const {
        check(off, len);
        return bytes_.data() + off;
    }

private:
    void check(std::size_t off, std::size_t len) const {
        if (off + len > bytes_.size() || off + len < off) {
            throw InputError(name_ + ": truncated TIFF structure");
        }
    }

    std::vector<std::uint8_t> bytes_;
    std::string name_;
    bool big_endian_ = false;
};

struct TiffField {
    std::uint16_t type = 0;
    std::uint32_t count = 0;
    std::vector<std::uint64_t> ints;
    std::vector<double> reals;
};

std::size_t type_size(std::uint16_t type) {
    switch (type) {
    case 1: case 2: case 6: case 7: return 1; // BYTE ASCII SBYTE UNDEFINED
    case 3: case 8: return 2;                 // SHORT SSHORT
    case 4: case 9: case 11: return 4;        // LONG SLONG FLOAT
    case 5: case 10: case 12: return 8;       // RATIONAL SRATIONAL DOUBLE
    default: return 0;
    }
}

TiffField read_field(const ByteReader& in, std::size_t entry_off) {
    TiffField f;
    f.type = in.u16(entry_off + 2);
    f.count = in.u32(entry_off + 4);
    std::size_t elem = type_size(f.type);
    if (elem == 0) return f; // unknown type, caller skips by tag anyway
    std::size_t total = elem * f.count;
    std::size_t value_off =
        total <= 4 ? entry_off + 8 : in.u32(entry_off + 8);
    for (std::uint32_t i = 0; i < f.count; ++i) {
        std::size_t off = value_off + i * elem;
        switch (f.type) {
        case 1: case 2: case 7:
            f.ints.push_back(in.u8(off));
            break;
        case 3:
            f.ints.push_back(in.u16(off));
            break;
        case 4:
            f.ints.push_back(in.u32(off));
            break;
        case 12:
            f.reals.push_back(in.f64(off));
            break;
        default:
            // Signed/rational variants are not needed for the tags we read.
            f.ints.push_back(0);
            break;
        }
    }
    return f;
}

std::vector<std::uint8_t> inflate_bytes(const std::uint8_t* src,
                                        std::size_t src_len,
                                        std::size_t expected,
                                        const std::string& name) {
    std::vector<std::uint8_t> out(expected);
    uLongf dest_len = static_cast<uLongf>(expected);
    int rc = uncompress(out.data(), &dest_len, src, static_cast<uLong>(src_len));
    if (rc != Z_OK) {
        throw InputError(name + ": deflate strip failed to decompress");
    }
    out.resize(dest_len);
    return out;
}

std::vector<std::uint8_t> unpackbits(const std::uint8_t* src,
                                     std::size_t src_len, std::size_t expected,
                                     const std::string& name) {
    std::vector<std::uint8_t> out;
    out.reserve(expected);
    std::size_t i = 0;
    while (i < src_len && out.size() < expected) {
        std::int8_t n = static_cast<std::int8_t>(src[i++]);
        if (n >= 0) {
            std::size_t len = static_cast<std::size_t>(n) + 1;
            if (i + len > src_len) {
                throw InputError(name + ": truncated PackBits run");
            }
            out.insert(out.end(), src + i, src + i + len);
            i += len;
        } else if (n != -128) {
            if (i >= src_len) {
                throw InputError(name + ": truncated PackBits run");
            }
            out.insert(out.end(), static_cast<std::size_t>(-n) + 1, src[i++]);
        }
    }
    return out;
}

// TIFF-variant LZW: MSB-first code packing, 9-bit initial codes, clear code
// 256, end-of-information 257, and the early code-width change.
std::vector<std::uint8_t> unlzw(const std::uint8_t* src, std::size_t src_len,
                                std::size_t expected, const std::string& name) {
    constexpr int kClear = 256;
    constexpr int kEoi = 257;
    std::vector<std::uint8_t> out;
    out.reserve(expected);

    std::vector<std::vector<std::uint8_t>> table;
    auto reset_table = [&table] {
        table.clear();
        table.reserve(4096);
        for (int i = 0; i < 256; ++i) {
            table.push_back({static_cast<std::uint8_t>(i)});
        }
        table.push_back({}); // clear
        table.push_back({}); // eoi
    };
    reset_table();

    std::size_t bit_pos = 0;
    int code_len = 9;
    auto next_code = [&]() -> int {
        if ((bit_pos + code_len + 7) / 8 > src_len) return kEoi;
        int code = 0;
        for (int i = 0; i < code_len; ++i) {
            std::size_t byte = (bit_pos + i) / 8;
            int bit = 7 - static_cast<int>((bit_pos + i) % 8);
            code = code << 1 | ((src[byte] >> bit) & 1);
        }
        bit_pos += code_len;
        return code;
    };

    int prev = -1;
    for (;;) {
        int code = next_code();
        if (code == kEoi) break;
        if (code == kClear) {
            reset_table();
            code_len = 9;
            prev = -1;
            continue;
        }
        if (prev == -1) {
            if (code >= 256) {
                throw InputError(name + ": corrupt LZW stream");
            }
            out.push_back(static_cast<std::uint8_t>(code));
            prev = code;
        } else {
            std::vector<std::uint8_t> entry;
            if (code < static_cast<int>(table.size())) {
                entry = table[code];
            } else if (code == static_cast<int>(table.size())) {
                entry = table[prev];
                entry.push_back(table[prev][0]);
            } else {
                throw InputError(name + ": corrupt LZW stream");
            }
            out.insert(out.end(), entry.begin(), entry.end());
            std::vector<std::uint8_t> added = table[prev];
            added.push_back(entry[0]);
            table.push_back(std::move(added));
            prev = code;
        }
        if (table.size() == (1u << code_len) - 1 && code_len < 12) {
            ++code_len;
        }
        if (out.size() >= expected) break;
    }
    return out;
}

void undo_horizontal_predictor(std::vector<std::uint8_t>& bytes, int width,
                               int rows, int bytes_per_sample, bool big_endian,
                               std::uint16_t sample_format,
                               const std::string& name) {
    if (sample_format == kFormatFloat) {
        throw InputError(name + ": floating point predictor is not supported");
    }
    for (int r = 0; r < rows; ++r) {
        std::uint8_t* row = bytes.data() +
                            static_cast<std::size_t>(r) * width *
                                bytes_per_sample;
        for (int x = 1; x < width; ++x) {
            std::uint8_t* cur = row + static_cast<std::size_t>(x) * bytes_per_sample;
            std::uint8_t* prev = cur - bytes_per_sample;
            std::uint64_t a = 0, b = 0;
            for (int i = 0; i < bytes_per_sample; ++i) {
                int shift = big_endian ? (bytes_per_sample - 1 - i) * 8 : i * 8;
                a |= static_cast<std::uint64_t>(cur[i]) << shift;
                b |= static_cast<std::uint64_t>(prev[i]) << shift;
            }
            std::uint64_t sum = a + b;
            for (int i = 0; i < bytes_per_sample; ++i) {
                int shift = big_endian ? (bytes_per_sample - 1 - i) * 8 : i * 8;
                cur[i] = static_cast<std::uint8_t>(sum >> shift);
            }
        }
    }
}

double decode_sample(const std::uint8_t* p, int bytes_per_sample,
                     std::uint16_t format, bool big_endian,
                     const std::string& name) {
    std::uint64_t u = 0;
    for (int i = 0; i < bytes_per_sample; ++i) {
        int shift = big_endian ? (bytes_per_sample - 1 - i) * 8 : i * 8;
        u |= static_cast<std::uint64_t>(p[i]) << shift;
    }
    switch (format) {
    case kFormatUnsigned:
        return static_cast<double>(u);
    case kFormatSigned:
        if (bytes_per_sample == 1) return static_cast<std::int8_t>(u);
        if (bytes_per_sample == 2) return static_cast<std::int16_t>(u);
        if (bytes_per_sample == 4) return static_cast<std::int32_t>(u);
        break;
    case kFormatFloat:
        if (bytes_per_sample == 4) {
            float f;
            std::uint32_t u32 = static_cast<std::uint32_t>(u);
            std::memcpy(&f, &u32, 4);
            return f;
        }
        if (bytes_per_sample == 8) {
            double d;
            std::memcpy(&d, &u, 8);
            return d;
        }
        break;
    default:
        break;
    }
    throw InputError(name + ": unsupported sample format");
}

struct LittleEndianWriter {
    std::vector<std::uint8_t> bytes;

    void u16(std::uint16_t v) {
        bytes.push_back(static_cast<std::uint8_t>(v));
        bytes.push_back(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void f64(double d) {
        std::uint64_t u;
        std::memcpy(&u, &d, 8);
        for (int i = 0; i < 8; ++i) {
            bytes.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
        }
    }
    void f32(float f) {
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        u32(u);
    }
};

} // namespace

Raster read_geotiff(const std::filesystem::path& path, RasterKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open raster: " + path.string());
    }
    std::vector<std::uint8_t> bytes(
        (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    ByteReader file(std::move(bytes), path.string());
    if (file.size() < 8) {
        throw InputError(path.string() + ": not a TIFF file");
    }
    std::uint8_t b0 = file.u8(0), b1 = file.u8(1);
    if (b0 == 'M' && b1 == 'M') {
        file.set_big_endian(true);
    } else if (!(b0 == 'I' && b1 == 'I')) {
        throw InputError(path.string() + ": not a TIFF file");
    }
    std::uint16_t magic = file.u16(2);
    if (magic == 43) {
        throw InputError(path.string() + ": BigTIFF is not supported");
    }
    if (magic != 42) {
        throw InputError(path.string() + ": not a TIFF file");
    }

    std::size_t ifd = file.u32(4);
    std::uint16_t n_entries = file.u16(ifd);
    std::map<std::uint16_t, TiffField> fields;
    for (std::uint16_t i = 0; i < n_entries; ++i) {
        std::size_t off = ifd + 2 + static_cast<std::size_t>(i) * 12;
        fields[file.u16(off)] = read_field(file, off);
    }

    auto get_int = [&](std::uint16_t tag, std::uint64_t fallback,
                       bool required = false) -> std::uint64_t {
        auto it = fields.find(tag);
        if (it == fields.end() || it->second.ints.empty()) {
            if (required) {
                throw InputError(path.string() + ": missing TIFF tag " +
                                 std::to_string(tag));
            }
            return fallback;
        }
        return it->second.ints[0];
    };

    const int width = static_cast<int>(get_int(kImageWidth, 0, true));
    const int height = static_cast<int>(get_int(kImageLength, 0, true));
    if (width <= 0 || height <= 0 ||
        static_cast<std::int64_t>(width) * height > (1ll << 31)) {
        throw InputError(path.string() + ": unsupported image dimensions");
    }
    if (get_int(kSamplesPerPixel, 1) != 1) {
        throw InputError(path.string() +
                         ": only single-band rasters are supported");
    }
    if (get_int(kPlanarConfig, 1) != 1) {
        throw InputError(path.string() + ": unsupported planar configuration");
    }
    const int bits = static_cast<int>(get_int(kBitsPerSample, 1));
    if (bits != 8 && bits != 16 && bits != 32 && bits != 64) {
        throw InputError(path.string() + ": unsupported bits per sample: " +
                         std::to_string(bits));
    }
    const int bytes_per_sample = bits / 8;
    const std::uint16_t format =
        static_cast<std::uint16_t>(get_int(kSampleFormat, kFormatUnsigned));
    const std::uint16_t compression =
        static_cast<std::uint16_t>(get_int(kCompression, kCompressionNone));
    const std::uint16_t predictor =
        static_cast<std::uint16_t>(get_int(kPredictor, 1));
    if (predictor != 1 && predictor != 2) {
        throw InputError(path.string() + ": unsupported predictor " +
                         std::to_string(predictor));
    }

    const bool tiled = fields.count(kTileOffsets) > 0;
    std::vector<std::uint64_t> chunk_offsets, chunk_counts;
    int chunk_w, chunk_h;
    if (tiled) {
        chunk_offsets = fields[kTileOffsets].ints;
        chunk_counts = fields[kTileByteCounts].ints;
        chunk_w = static_cast<int>(get_int(kTileWidth, 0, true));
        chunk_h = static_cast<int>(get_int(kTileLength, 0, true));
        if (chunk_w <= 0 || chunk_h <= 0) {
            throw InputError(path.string() + ": bad tile dimensions");
        }
    } else {
        if (!fields.count(kStripOffsets)) {
            throw InputError(path.string() + ": no strip or tile offsets");
        }
        chunk_offsets = fields[kStripOffsets].ints;
        chunk_counts = fields.count(kStripByteCounts)
                           ? fields[kStripByteCounts].ints
                           : std::vector<std::uint64_t>{};
        chunk_w = width;
        std::uint64_t rps = get_int(kRowsPerStrip, height);
        chunk_h = static_cast<int>(
            std::min<std::uint64_t>(rps, static_cast<std::uint64_t>(height)));
    }
    if (chunk_counts.size() != chunk_offsets.size()) {
        if (compression == kCompressionNone && chunk_counts.empty()) {
            // Byte counts are implied for uncompressed data.
            for (std::size_t i = 0; i < chunk_offsets.size(); ++i) {
                chunk_counts.push_back(static_cast<std::uint64_t>(chunk_w) *
                                       chunk_h * bytes_per_sample);
            }
        } else {
            throw InputError(path.string() + ": malformed strip/tile counts");
        }
    }

    const bool big = b0 == 'M';
    std::vector<double> band(static_cast<std::size_t>(width) * height, 0.0);
    const int chunks_across = tiled ? (width + chunk_w - 1) / chunk_w : 1;

    for (std::size_t ci = 0; ci < chunk_offsets.size(); ++ci) {
        int origin_x = tiled
                           ? static_cast<int>(ci % chunks_across) * chunk_w
                           : 0;
        int origin_y = tiled
                           ? static_cast<int>(ci / chunks_across) * chunk_h
                           : static_cast<int>(ci) * chunk_h;
        if (origin_y >= height) break;
        int rows = tiled ? chunk_h : std::min(chunk_h, height - origin_y);
        std::size_t expected = static_cast<std::size_t>(chunk_w) * rows *
                               bytes_per_sample;

        const std::uint8_t* src =
            file.data(chunk_offsets[ci], chunk_counts[ci]);
        std::vector<std::uint8_t> decoded;
        switch (compression) {
        case kCompressionNone:
            decoded.assign(src, src + std::min<std::size_t>(
                                          chunk_counts[ci], expected));
            break;
        case kCompressionDeflate:
        case kCompressionDeflateOld:
            decoded = inflate_bytes(src, chunk_counts[ci], expected,
                                    path.string());
            break;
        case kCompressionPackBits:
            decoded = unpackbits(src, chunk_counts[ci], expected,
                                 path.string());
            break;
        case kCompressionLzw:
            decoded = unlzw(src, chunk_counts[ci], expected, path.string());
            break;
        default:
            throw InputError(path.string() + ": unsupported compression " +
                             std::to_string(compression));
        }
        if (decoded.size() < expected) {
            throw InputError(path.string() + ": strip/tile shorter than expected");
        }
        if (predictor == 2) {
            undo_horizontal_predictor(decoded, chunk_w, rows, bytes_per_sample,
                                      big, format, path.string());
        }
        int copy_w = std::min(chunk_w, width - origin_x);
        int copy_h = std::min(rows, height - origin_y);
        for (int y = 0; y < copy_h; ++y) {
            const std::uint8_t* row =
                decoded.data() +
                static_cast<std::size_t>(y) * chunk_w * bytes_per_sample;
            double* dst = band.data() +
                          static_cast<std::size_t>(origin_y + y) * width +
                          origin_x;
            for (int x = 0; x < copy_w; ++x) {
                dst[x] = decode_sample(row + static_cast<std::size_t>(x) *
                                                 bytes_per_sample,
                                       bytes_per_sample, format, big,
                                       path.string());
            }
        }
    }

    // Georeferencing: pixel scale + tiepoint, or an axis-aligned transform.
    AffineGeoref georef{0.0, 0.0, 1.0, 1.0};
    if (fields.count(kModelPixelScale) && fields.count(kModelTiepoint)) {
        const auto& scale = fields[kModelPixelScale].reals;
        const auto& tie = fields[kModelTiepoint].reals;
        if (scale.size() < 2 || tie.size() < 6) {
            throw InputError(path.string() + ": malformed GeoTIFF scale/tiepoint");
        }
        georef.res_x = scale[0];
        georef.res_y = scale[1];
        georef.origin_x = tie[3] - tie[0] * scale[0];
        georef.origin_y = tie[4] + tie[1] * scale[1];
    } else if (fields.count(kModelTransformation)) {
        const auto& t = fields[kModelTransformation].reals;
        if (t.size() < 16) {
            throw InputError(path.string() + ": malformed model transformation");
        }
        if (t[1] != 0.0 || t[4] != 0.0) {
            throw InputError(path.string() +
                             ": skewed or rotated rasters are not supported");
        }
        georef.res_x = t[0];
        georef.res_y = -t[5];
        georef.origin_x = t[3];
        georef.origin_y = t[7];
    }
    try {
        georef.validate();
        return Raster(width, height, kind, georef, std::move(band));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_geotiff(const std::filesystem::path& path, const Raster& raster) {
    const int width = raster.width();
    const int height = raster.height();
    const std::uint32_t bytes_per_row = static_cast<std::uint32_t>(width) * 4;
    // Keep strips near 1 MiB so very tall rasters avoid one giant strip.
    const int rows_per_strip = std::max(
        1, static_cast<int>((1u << 20) / std::max(1u, bytes_per_row)));
    const int n_strips = (height + rows_per_strip - 1) / rows_per_strip;

    LittleEndianWriter out;
    out.bytes.reserve(static_cast<std::size_t>(width) * height * 4 + 1024);
    out.u16(0x4949); // "II"
    out.u16(42);
    std::size_t ifd_offset_pos = out.bytes.size();
    out.u32(0); // patched once the IFD location is known

    std::vector<std::uint32_t> strip_offsets, strip_counts;
    auto values = raster.values();
    for (int s = 0; s < n_strips; ++s) {
        int y0 = s * rows_per_strip;
        int y1 = std::min(height, y0 + rows_per_strip);
        strip_offsets.push_back(static_cast<std::uint32_t>(out.bytes.size()));
        strip_counts.push_back(static_cast<std::uint32_t>(y1 - y0) *
                               bytes_per_row);
        for (int y = y0; y < y1; ++y) {
            for (int x = 0; x < width; ++x) {
                out.f32(static_cast<float>(
                    values[static_cast<std::size_t>(y) * width + x]));
            }
        }
    }

    // Out-of-line tag payloads.
    std::uint32_t strip_offsets_pos = 0, strip_counts_pos = 0;
    if (n_strips > 1) {
        strip_offsets_pos = static_cast<std::uint32_t>(out.bytes.size());
        for (std::uint32_t v : strip_offsets) out.u32(v);
        strip_counts_pos = static_cast<std::uint32_t>(out.bytes.size());
        for (std::uint32_t v : strip_counts) out.u32(v);
    }
    const AffineGeoref& g = raster.georef();
    std::uint32_t scale_pos = static_cast<std::uint32_t>(out.bytes.size());
    out.f64(g.res_x);
    out.f64(g.res_y);
    out.f64(0.0);
    std::uint32_t tie_pos = static_cast<std::uint32_t>(out.bytes.size());
    for (double v : {0.0, 0.0, 0.0, g.origin_x, g.origin_y, 0.0}) out.f64(v);

    std::uint32_t ifd_pos = static_cast<std::uint32_t>(out.bytes.size());
    out.bytes[ifd_offset_pos] = static_cast<std::uint8_t>(ifd_pos);
    out.bytes[ifd_offset_pos + 1] = static_cast<std::uint8_t>(ifd_pos >> 8);
    out.bytes[ifd_offset_pos + 2] = static_cast<std::uint8_t>(ifd_pos >> 16);
    out.bytes[ifd_offset_pos + 3] = static_cast<std::uint8_t>(ifd_pos >> 24);

    struct Entry {
        std::uint16_t tag, type;
        std::uint32_t count, value;
    };
    std::vector<Entry> entries{
        {kImageWidth, 4, 1, static_cast<std::uint32_t>(width)},
        {kImageLength, 4, 1, static_cast<std::uint32_t>(height)},
        {kBitsPerSample, 3, 1, 32},
        {kCompression, 3, 1, kCompressionNone},
        {kPhotometric, 3, 1, 1}, // BlackIsZero
        {kStripOffsets, 4, static_cast<std::uint32_t>(n_strips),
         n_strips == 1 ? strip_offsets[0] : strip_offsets_pos},
        {kSamplesPerPixel, 3, 1, 1},
        {kRowsPerStrip, 4, 1, static_cast<std::uint32_t>(rows_per_strip)},
        {kStripByteCounts, 4, static_cast<std::uint32_t>(n_strips),
         n_strips == 1 ? strip_counts[0] : strip_counts_pos},
        {kSampleFormat, 3, 1, kFormatFloat},
        {kModelPixelScale, 12, 3, scale_pos},
        {kModelTiepoint, 12, 6, tie_pos},
    };
    out.u16(static_cast<std::uint16_t>(entries.size()));
    for (const Entry& e : entries) {
        out.u16(e.tag);
        out.u16(e.type);
        out.u32(e.count);
        if (e.type == 3 && e.count == 1) {
            out.u16(static_cast<std::uint16_t>(e.value));
            out.u16(0);
        } else {
            out.u32(e.value);
        }
    }
    out.u32(0); // no next IFD

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw InputError("cannot write raster: " + path.string());
    }
    file.write(reinterpret_cast<const char*>(out.bytes.data()),
               static_cast<std::streamsize>(out.bytes.size()));
    if (!file) {
        throw InputError("failed writing raster: " + path.string());
    }
}

} // namespace sceneval
