#include "elri/field_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "elri/errors.hpp"

namespace elri::io {
namespace {

constexpr char kMagic[4] = {'K', 'D', 'V', 'F'};

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw IoError("truncated KDVF header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& out, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw IoError("truncated KDVF payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

std::string format17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_csv(const Field& f, std::ostream& out) {
    out << "# n=" << f.size() << " length=" << format17(Grid::length()) << '\n';
    for (double v : f.values()) out << format17(v) << '\n';
}

Field read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty field CSV");
    std::size_t n = 0;
    if (std::sscanf(line.c_str(), "# n=%zu", &n) != 1) {
        throw IoError("field CSV header must start with '# n=<N>', got: " + line);
    }
    std::vector<double> values;
    values.reserve(n);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double v = 0.0;
        const auto res = std::from_chars(line.data(), line.data() + line.size(), v);
        if (res.ec != std::errc()) throw IoError("bad value in field CSV: " + line);
        values.push_back(v);
    }
    if (values.size() != n) {
        throw IoError("field CSV declares n=" + std::to_string(n) + " but holds " +
                      std::to_string(values.size()) + " values");
    }
    return Field(Grid(n), std::move(values));
}

void write_binary(const Field& f, std::ostream& out) {
    out.write(kMagic, 4);
    put_u32(out, static_cast<std::uint32_t>(f.size()));
    put_u32(out, 0);
    for (double v : f.values()) put_f64(out, v);
}

Field read_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
        throw IoError("missing KDVF magic");
    }
    const std::uint32_t n = get_u32(in);
    (void)get_u32(in);
    std::vector<double> values(n);
    for (auto& v : values) v = get_f64(in);
    return Field(Grid(n), std::move(values));
}

void save(const Field& f, const std::filesystem::path& path) {
    const bool binary = path.extension() == ".bin" || path.extension() == ".kdvf";
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    if (binary) {
        write_binary(f, out);
    } else {
        write_csv(f, out);
    }
    if (!out) throw IoError("write failed: " + path.string());
}

Field load(const std::filesystem::path& path) {
    const bool binary = path.extension() == ".bin" || path.extension() == ".kdvf";
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw IoError("cannot open " + path.string());
    return binary ? read_binary(in) : read_csv(in);
}

}  // namespace elri::io
