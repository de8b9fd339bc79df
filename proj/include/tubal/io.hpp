#pragma once

#include <filesystem>

#include "tubal/tensor.hpp"

namespace tubal::io {

// Binary tensor container ("TNS3"): 4 magic bytes, u32 LE version (1),
// three u64 LE dimensions, then n1*n2*n3 IEEE-754 binary64 LE values
// in storage order (slice-major, column-major within a slice).
// Round trips are byte-identical.
void write_tensor(const std::filesystem::path& path, const RealTensor3& a);
RealTensor3 read_tensor(const std::filesystem::path& path);

// Mask container ("MSK3"): same header layout, one byte per entry
// (0 or 1).
void write_mask(const std::filesystem::path& path, const ObservationMask& m);
ObservationMask read_mask(const std::filesystem::path& path);

/// Binary PGM (P5) -> n1 x n2 x 1 tensor; binary PPM (P6) ->
/// n1 x n2 x 3 tensor with R, G, B slices. Values are doubles on the
/// 0..255 scale; maxval must be 255.
RealTensor3 read_image(const std::filesystem::path& path);

/// Writes 1-slice tensors as PGM, 3-slice as PPM; values are clamped
/// to [0, 255] and rounded half-up.
void write_image(const std::filesystem::path& path, const RealTensor3& a);

/// Reads every regular file in the directory (sorted by filename) as a
/// grayscale frame; frames become frontal slices.
RealTensor3 read_frames(const std::filesystem::path& dir);

}  // namespace tubal::io
