#include "emhd/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "emhd/errors.hpp"

namespace emhd {

namespace {

constexpr char kMagic[8] = {'E', 'M', 'H', 'D', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
    return v;
}

double get_f64(const std::vector<std::uint8_t>& in, size_t at) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::vector<std::uint8_t> save_snapshot(const StateAB& state) {
    const int n = state.grid().n();
    std::vector<std::uint8_t> out;
    out.reserve(32 + 16 * static_cast<size_t>(n) * n);
    out.insert(out.end(), kMagic, kMagic + 8);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(n));
    put_f64(out, state.grid().length());
    put_f64(out, state.time);
    put_f64(out, state.mu);
    for (const ScalarField* f : {&state.a, &state.b}) {
        const auto& samples = f->physical();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) put_f64(out, samples(i, j));
    }
    return out;
}

StateAB load_snapshot(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 40)
        throw IoError("snapshot truncated: header needs 40 bytes, got " +
                      std::to_string(bytes.size()));
    if (std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw IoError("snapshot magic mismatch: expected \"EMHDSNAP\", got \"" +
                      std::string(bytes.begin(), bytes.begin() + 8) + "\"");
    const std::uint32_t version = get_u32(bytes, 8);
    if (version != kVersion)
        throw IoError("unsupported snapshot version " + std::to_string(version) +
                      " (this reader supports version 1)");
    const std::uint32_t n = get_u32(bytes, 12);
    const double length = get_f64(bytes, 16);
    const double t = get_f64(bytes, 24);
    const double mu = get_f64(bytes, 32);

    const size_t field_bytes = 8 * static_cast<size_t>(n) * n;
    const size_t expected = 40 + 2 * field_bytes;
    if (bytes.size() != expected)
        throw IoError("snapshot truncated or oversized: expected " + std::to_string(expected) +
                      " bytes for N=" + std::to_string(n) + ", got " +
                      std::to_string(bytes.size()));

    TorusGrid grid(static_cast<int>(n), length);
    auto read_field = [&](size_t base) {
        Eigen::ArrayXXd samples(n, n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j) {
                const size_t at = base + 8 * (static_cast<size_t>(i) * n + j);
                const double v = get_f64(bytes, at);
                if (!std::isfinite(v))
                    throw IoError("snapshot payload non-finite at byte offset " +
                                  std::to_string(at));
                samples(i, j) = v;
            }
        return ScalarField::from_physical(grid, std::move(samples));
    };
    ScalarField a = read_field(40);
    ScalarField b = read_field(40 + field_bytes);
    if (!(mu > 0.0)) throw IoError("snapshot carries non-positive viscosity mu");
    return StateAB(std::move(a), std::move(b), t, mu);
}

void save_snapshot_file(const StateAB& state, const std::string& path) {
    const auto bytes = save_snapshot(state);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open snapshot file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed on snapshot file: " + path);
}

StateAB load_snapshot_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open snapshot file: " + path);
    const auto size = in.tellg();
    in.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<size_t>(size));
    in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw IoError("read failed on snapshot file: " + path);
    return load_snapshot(bytes);
}

}  // namespace emhd
