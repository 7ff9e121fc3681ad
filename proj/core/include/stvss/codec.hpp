#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stvss/bits.hpp"
#include "stvss/construct.hpp"
#include "stvss/rational.hpp"
#include "stvss/shift_analysis.hpp"

namespace stvss {

/// One share transparency: every n_y x (n_x*m) cell is the share's block of
/// some matrix in its collection. The fingerprint ties shares to the scheme
/// and method they were encoded with.
struct share_image {
  bitmap image;
  std::uint64_t fingerprint = 0;
  int share_index = 0;  // 1-based
};

std::uint64_t scheme_fingerprint(const stvss_pair& pair, permutation_method method);

/// Encodes the secret into n share images: per secret pixel one matrix is
/// sampled from the color's collection and share i receives its block.
/// Every pixel draws from its own seed-derived stream, so the output is
/// deterministic and independent of traversal order.
std::vector<share_image> encode(const bitmap& secret, const stvss_pair& pair,
                                permutation_method method, std::uint64_t seed);

/// Pixelwise OR over the reference share's footprint after translating each
/// share by its offset; content shifted in from outside any share is white.
/// Fingerprints of all shares must match.
bitmap stack_shares(std::span<const share_image> shares, const shift_assignment& shifts);

struct empirical_contrast {
  rational contrast;
  double std_error = 0;
  long long black_cells = 0;
  long long white_cells = 0;
  long long m_star = 0;
};

/// (mean stacked cell weight over black secret pixels - mean over white) / m*,
/// measured over interior cells only (cells whose full shifted neighborhood
/// is in-image). Throws std::domain_error when the interior lacks one color.
empirical_contrast measure_empirical_contrast(const bitmap& secret, const bitmap& stacked,
                                              const stvss_pair& pair,
                                              const shift_assignment& shifts);

enum class pbm_format { p1, p4 };

/// Reads a P1 (ASCII) or P4 (packed binary) portable bitmap; 1 = black.
/// Header comments, if any, are appended to *comments.
bitmap read_pbm(std::istream& in, std::vector<std::string>* comments = nullptr);

void write_pbm(std::ostream& out, const bitmap& image, pbm_format format,
               std::span<const std::string> comments = {});

/// Share files are plain PBM with the share index and scheme fingerprint in
/// a header comment, so stacking can verify the shares belong together.
void write_share_pbm(std::ostream& out, const share_image& share, pbm_format format);
share_image read_share_pbm(std::istream& in);

}  // namespace stvss
