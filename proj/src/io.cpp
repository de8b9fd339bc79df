#include "tubal/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace tubal::io {

namespace {

constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_f64(std::string& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
public:
    explicit Reader(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path.string());
        buf_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        if (in.bad()) throw IoError("read failure on " + path.string());
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf_[pos_ + b])) << (8 * b);
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + b])) << (8 * b);
        pos_ += 8;
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    void magic(const char* expect) {
        need(4);
        if (std::memcmp(buf_.data() + pos_, expect, 4) != 0)
            throw FormatError(std::string("bad magic, expected ") + expect);
        pos_ += 4;
    }

    std::uint8_t byte() {
        need(1);
        return static_cast<std::uint8_t>(buf_[pos_++]);
    }

    std::size_t remaining() const { return buf_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (buf_.size() - pos_ < n) throw FormatError("truncated file");
    }

    std::vector<char> buf_;
    std::size_t pos_ = 0;
};

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on " + path.string());
}

// Validates a dimension triple and returns the entry count.
// Multiplication is guarded so forged headers cannot overflow.
std::uint64_t check_dims(std::uint64_t n1, std::uint64_t n2, std::uint64_t n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1) throw FormatError("dimensions must be >= 1");
    constexpr std::uint64_t kMaxEntries = 1ull << 40;
    if (n1 > kMaxEntries || n2 > kMaxEntries || n3 > kMaxEntries ||
        n1 > kMaxEntries / n2 || n1 * n2 > kMaxEntries / n3)
        throw FormatError("unreasonable dimensions");
    return n1 * n2 * n3;
}

}  // namespace

void write_tensor(const std::filesystem::path& path, const RealTensor3& a) {
    std::string bytes;
    bytes.reserve(40 + 8 * a.size());
    bytes.append("TNS3", 4);
    put_u32(bytes, kVersion);
    put_u64(bytes, a.n1());
    put_u64(bytes, a.n2());
    put_u64(bytes, a.n3());
    for (std::size_t t = 0; t < a.size(); ++t) put_f64(bytes, a.data()[t]);
    write_file(path, bytes);
}

RealTensor3 read_tensor(const std::filesystem::path& path) {
    Reader r(path);
    r.magic("TNS3");
    if (r.u32() != kVersion) throw FormatError("unsupported TNS3 version");
    const std::uint64_t n1 = r.u64(), n2 = r.u64(), n3 = r.u64();
    const std::uint64_t entries = check_dims(n1, n2, n3);
    if (r.remaining() != 8 * entries) throw FormatError("payload length mismatch");
    RealTensor3 a(n1, n2, n3);
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double v = r.f64();
        if (!std::isfinite(v)) throw FormatError("non-finite tensor entry");
        a.data()[t] = v;
    }
    return a;
}

void write_mask(const std::filesystem::path& path, const ObservationMask& m) {
    std::string bytes;
    bytes.reserve(40 + m.size());
    bytes.append("MSK3", 4);
    put_u32(bytes, kVersion);
    put_u64(bytes, m.n1());
    put_u64(bytes, m.n2());
    put_u64(bytes, m.n3());
    for (std::size_t t = 0; t < m.size(); ++t)
        bytes.push_back(m.data()[t] ? '\1' : '\0');
    write_file(path, bytes);
}

ObservationMask read_mask(const std::filesystem::path& path) {
    Reader r(path);
    r.magic("MSK3");
    if (r.u32() != kVersion) throw FormatError("unsupported MSK3 version");
    const std::uint64_t n1 = r.u64(), n2 = r.u64(), n3 = r.u64();
    const std::uint64_t entries = check_dims(n1, n2, n3);
    if (r.remaining() != entries) throw FormatError("payload length mismatch");
    ObservationMask m(n1, n2, n3);
    for (std::size_t t = 0; t < m.size(); ++t) {
        const std::uint8_t b = r.byte();
        if (b > 1) throw FormatError("mask byte must be 0 or 1");
        m.data()[t] = b;
    }
    return m;
}

namespace {

// Parses the PGM/PPM header tokens, skipping whitespace and #-comments.
class PnmHeader {
public:
    explicit PnmHeader(std::ifstream& in) : in_(in) {}

    std::string magic() {
        char a = get(), b = get();
        return std::string{a, b};
    }

    std::size_t number() {
        skip_separators();
        std::string tok;
        while (true) {
            const int c = in_.peek();
            if (c == EOF || std::isspace(c)) break;
            tok.push_back(static_cast<char>(in_.get()));
        }
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw FormatError("bad numeric field in image header");
        return static_cast<std::size_t>(std::stoull(tok));
    }

    void single_whitespace() {
        const int c = in_.get();
        if (c == EOF || !std::isspace(c)) throw FormatError("missing pixel-data separator");
    }

private:
    char get() {
        const int c = in_.get();
        if (c == EOF) throw FormatError("truncated image header");
        return static_cast<char>(c);
    }

    void skip_separators() {
        while (true) {
            int c = in_.peek();
            if (c == '#') {
                while (c != EOF && c != '\n') c = in_.get();
            } else if (c != EOF && std::isspace(c)) {
                in_.get();
            } else {
                return;
            }
        }
    }

    std::ifstream& in_;
};

}  // namespace

RealTensor3 read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    PnmHeader h(in);
    const std::string magic = h.magic();
    std::size_t channels;
    if (magic == "P5") {
        channels = 1;
    } else if (magic == "P6") {
        channels = 3;
    } else if (magic == "P2" || magic == "P3") {
        throw FormatError("ASCII PGM/PPM not supported, use the binary variants");
    } else {
        throw FormatError("not a binary PGM/PPM file");
    }
    const std::size_t width = h.number();
    const std::size_t height = h.number();
    const std::size_t maxval = h.number();
    if (width < 1 || height < 1) throw FormatError("empty image");
    if (maxval != 255) throw FormatError("maxval must be 255");
    h.single_whitespace();

    std::vector<char> pixels(width * height * channels);
    in.read(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != pixels.size())
        throw FormatError("truncated pixel data");

    RealTensor3 a(height, width, channels);
    std::size_t t = 0;
    for (std::size_t i = 0; i < height; ++i)
        for (std::size_t j = 0; j < width; ++j)
            for (std::size_t k = 0; k < channels; ++k)
                a(i, j, k) = static_cast<double>(static_cast<unsigned char>(pixels[t++]));
    return a;
}

void write_image(const std::filesystem::path& path, const RealTensor3& a) {
    const std::size_t channels = a.n3();
    if (channels != 1 && channels != 3)
        throw ShapeError("write_image: tensor must have 1 or 3 frontal slices");
    const std::size_t height = a.n1(), width = a.n2();

    std::string bytes;
    bytes += (channels == 1) ? "P5" : "P6";
    bytes += "\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    for (std::size_t i = 0; i < height; ++i)
        for (std::size_t j = 0; j < width; ++j)
            for (std::size_t k = 0; k < channels; ++k) {
                double v = a(i, j, k);
                v = std::clamp(v, 0.0, 255.0);
                bytes.push_back(static_cast<char>(
                    static_cast<unsigned char>(std::floor(v + 0.5))));
            }
    write_file(path, bytes);
}

RealTensor3 read_frames(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw IoError(dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    if (files.empty()) throw EmptyDirError("no frames in " + dir.string());

    RealTensor3 out;
    for (std::size_t k = 0; k < files.size(); ++k) {
        RealTensor3 frame = read_image(files[k]);
        if (frame.n3() != 1)
            throw FormatError("frame " + files[k].filename().string() + " is not grayscale");
        if (k == 0) {
            out = RealTensor3(frame.n1(), frame.n2(), files.size());
        } else if (frame.n1() != out.n1() || frame.n2() != out.n2()) {
            throw FormatError("frame " + files[k].filename().string() +
                              " size differs from the first frame");
        }
        for (std::size_t j = 0; j < out.n2(); ++j)
            for (std::size_t i = 0; i < out.n1(); ++i) out(i, j, k) = frame(i, j, 0);
    }
    return out;
}

}  // namespace tubal::io
