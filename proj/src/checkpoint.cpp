#include "mhdlab/checkpoint.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mhdlab/errors.hpp"

namespace mhdlab {
namespace {

constexpr char magic[4] = {'E', 'L', 'S', 'F'};

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path,
                      const std::vector<const SpectralField*>& components) {
    if (components.empty()) throw ConfigError("write_checkpoint: no components");
    const Grid g = components.front()->grid;
    for (const auto* c : components)
        if (!(c->grid == g)) throw ConfigError("write_checkpoint: mixed grids");

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("write_checkpoint: cannot open " + path.string());
    os.write(magic, 4);
    write_u32(os, checkpoint_version);
    write_u32(os, static_cast<std::uint32_t>(g.n));
    write_u32(os, static_cast<std::uint32_t>(components.size()));
    for (const auto* c : components)
        os.write(reinterpret_cast<const char*>(c->c.data()),
                 static_cast<std::streamsize>(c->c.size() * sizeof(cplx)));
    if (!os) throw ConfigError("write_checkpoint: write failed for " + path.string());
}

CheckpointData read_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("read_checkpoint: cannot open " + path.string());
    char m[4];
    is.read(m, 4);
    if (!is || std::memcmp(m, magic, 4) != 0)
        throw ConfigError("read_checkpoint: bad magic in " + path.string());
    const std::uint32_t version = read_u32(is);
    if (version != checkpoint_version)
        throw ConfigError("read_checkpoint: unsupported version " + std::to_string(version));
    const std::uint32_t n = read_u32(is);
    const std::uint32_t ncomp = read_u32(is);
    if (!is || ncomp == 0) throw ConfigError("read_checkpoint: truncated header");

    CheckpointData data{Grid::make(static_cast<int>(n)), {}};
    data.components.reserve(ncomp);
    for (std::uint32_t i = 0; i < ncomp; ++i) {
        SpectralField f(data.grid);
        is.read(reinterpret_cast<char*>(f.c.data()),
                static_cast<std::streamsize>(f.c.size() * sizeof(cplx)));
        if (!is) throw ConfigError("read_checkpoint: truncated payload in " + path.string());
        data.components.push_back(std::move(f));
    }
    return data;
}

void write_pair_checkpoint(const std::filesystem::path& path, const VectorField& u,
                           const VectorField& B) {
    write_checkpoint(path, {&u[0], &u[1], &u[2], &B[0], &B[1], &B[2]});
}

std::pair<VectorField, VectorField> read_pair_checkpoint(const std::filesystem::path& path) {
    CheckpointData data = read_checkpoint(path);
    if (data.components.size() != 6)
        throw ConfigError("read_pair_checkpoint: expected 6 components, got " +
                          std::to_string(data.components.size()));
    VectorField u(data.grid), B(data.grid);
    for (int c = 0; c < 3; ++c) {
        u[c] = std::move(data.components[c]);
        B[c] = std::move(data.components[c + 3]);
    }
    return {std::move(u), std::move(B)};
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("write_csv: cannot open " + path.string());
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("read_csv: cannot open " + path.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace mhdlab
