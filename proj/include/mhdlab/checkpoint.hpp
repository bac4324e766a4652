#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mhdlab/field.hpp"

namespace mhdlab {

/// Field checkpoint container: a flat list of scalar spectral components.
/// On disk: magic "ELSF", then u32 version, u32 n, u32 component count,
/// then each component's n^3 complex<double> coefficients in row-major
/// (k1-major) storage order. Byte order is the host's (little-endian on
/// every supported platform).
struct CheckpointData {
    Grid grid{8};
    std::vector<SpectralField> components;
};

inline constexpr std::uint32_t checkpoint_version = 1;

void write_checkpoint(const std::filesystem::path& path,
                      const std::vector<const SpectralField*>& components);
CheckpointData read_checkpoint(const std::filesystem::path& path);

/// Six-component (u, B) convenience wrappers.
void write_pair_checkpoint(const std::filesystem::path& path, const VectorField& u,
                           const VectorField& B);
std::pair<VectorField, VectorField> read_pair_checkpoint(const std::filesystem::path& path);

/// printf %.17g: enough digits to reparse the exact double.
std::string format_g17(double v);

/// Minimal CSV helpers: rows of strings, comma-separated, newline-terminated.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

}  // namespace mhdlab
