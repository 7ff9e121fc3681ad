#include "stvss/codec.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stvss/permutations.hpp"

namespace stvss {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view data) {
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t scheme_fingerprint(const stvss_pair& pair, permutation_method method) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, format_stvss_pair(pair));
  h = fnv1a(h, to_string(method));
  return h;
}

std::vector<share_image> encode(const bitmap& secret, const stvss_pair& pair,
                                permutation_method method, std::uint64_t seed) {
  const int n = pair.n();
  const int ny = pair.block_height();
  const int w = pair.block_width();
  std::uint64_t fp = scheme_fingerprint(pair, method);

  std::vector<share_image> shares;
  shares.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    shares.push_back({bitmap(secret.width() * static_cast<std::size_t>(w),
                             secret.height() * static_cast<std::size_t>(ny)),
                      fp, i});
  }

  for (std::size_t py = 0; py < secret.height(); ++py) {
    for (std::size_t px = 0; px < secret.width(); ++px) {
      std::uint64_t pixel_index = py * secret.width() + px;
      std::mt19937_64 rng(splitmix64(splitmix64(seed) ^ pixel_index));
      pixel_color color = secret.get(px, py) ? pixel_color::black : pixel_color::white;
      boolean_matrix chosen = sample_matrix(pair, color, method, rng);
      for (int i = 1; i <= n; ++i) {
        bitmap& img = shares[static_cast<std::size_t>(i - 1)].image;
        for (int r = 0; r < ny; ++r) {
          std::size_t src_row = static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(ny) +
                                static_cast<std::size_t>(r);
          for (int c = 0; c < w; ++c) {
            if (chosen.get(src_row, static_cast<std::size_t>(c))) {
              img.set(px * static_cast<std::size_t>(w) + static_cast<std::size_t>(c),
                      py * static_cast<std::size_t>(ny) + static_cast<std::size_t>(r), true);
            }
          }
        }
      }
    }
  }
  return shares;
}

bitmap stack_shares(std::span<const share_image> shares, const shift_assignment& shifts) {
  if (shares.empty()) throw std::invalid_argument("stack: no shares");
  const share_image* reference = nullptr;
  for (const share_image& share : shares) {
    if (share.fingerprint != shares.front().fingerprint) {
      throw std::invalid_argument("stack: share fingerprints differ (mixed encodings)");
    }
    if (share.share_index == shifts.reference()) reference = &share;
  }
  if (reference == nullptr) {
    throw std::invalid_argument("stack: reference share is not among the inputs");
  }
  for (const auto& [share, s] : shifts.offsets()) {
    bool found = false;
    for (const share_image& img : shares) found = found || img.share_index == share;
    if (!found) throw std::invalid_argument("stack: shift assigned to a missing share");
  }

  bitmap out = reference->image;
  const long long height = static_cast<long long>(out.height());
  const long long width = static_cast<long long>(out.width());
  for (const share_image& share : shares) {
    if (&share == reference) continue;
    shift s = shifts.of(share.share_index);
    for (long long y = 0; y < height; ++y) {
      long long sy = y + s.y;
      if (sy < 0 || sy >= static_cast<long long>(share.image.height())) continue;
      for (long long x = 0; x < width; ++x) {
        long long sx = x + s.x;
        if (sx < 0 || sx >= static_cast<long long>(share.image.width())) continue;
        if (share.image.get(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy))) {
          out.set(static_cast<std::size_t>(x), static_cast<std::size_t>(y), true);
        }
      }
    }
  }
  return out;
}

empirical_contrast measure_empirical_contrast(const bitmap& secret, const bitmap& stacked,
                                              const stvss_pair& pair,
                                              const shift_assignment& shifts) {
  const int ny = pair.block_height();
  const int w = pair.block_width();
  if (stacked.width() != secret.width() * static_cast<std::size_t>(w) ||
      stacked.height() != secret.height() * static_cast<std::size_t>(ny)) {
    throw std::invalid_argument("measure: stacked image does not match the scheme geometry");
  }

  // Interior cells: every neighbor pixel a shift can pull content from must
  // itself be in-image.
  int need_dx_pos = 0;
  int need_dx_neg = 0;
  int need_dy_pos = 0;
  int need_dy_neg = 0;
  for (const auto& [share, s] : shifts.offsets()) {
    if (s.x > 0) need_dx_pos = 1;
    if (s.x < 0) need_dx_neg = 1;
    if (s.y > 0) need_dy_pos = 1;
    if (s.y < 0) need_dy_neg = 1;
  }

  long long sum_w = 0;
  long long sum_b = 0;
  long long n_w = 0;
  long long n_b = 0;
  double sq_w = 0;
  double sq_b = 0;
  for (std::size_t py = 0; py < secret.height(); ++py) {
    if ((need_dy_neg && py == 0) || (need_dy_pos && py + 1 == secret.height())) continue;
    for (std::size_t px = 0; px < secret.width(); ++px) {
      if ((need_dx_neg && px == 0) || (need_dx_pos && px + 1 == secret.width())) continue;
      long long weight = 0;
      for (int r = 0; r < ny; ++r) {
        for (int c = 0; c < w; ++c) {
          if (stacked.get(px * static_cast<std::size_t>(w) + static_cast<std::size_t>(c),
                          py * static_cast<std::size_t>(ny) + static_cast<std::size_t>(r))) {
            ++weight;
          }
        }
      }
      if (secret.get(px, py)) {
        sum_b += weight;
        sq_b += static_cast<double>(weight) * static_cast<double>(weight);
        ++n_b;
      } else {
        sum_w += weight;
        sq_w += static_cast<double>(weight) * static_cast<double>(weight);
        ++n_w;
      }
    }
  }
  if (n_w == 0 || n_b == 0) {
    throw std::domain_error("measure: interior region lacks one of the two secret colors");
  }

  empirical_contrast out;
  out.black_cells = n_b;
  out.white_cells = n_w;
  out.m_star = pair.expansion();
  rational mean_b(sum_b, n_b);
  rational mean_w(sum_w, n_w);
  out.contrast = (mean_b - mean_w) / rational(out.m_star);

  auto variance = [](double sq, long long sum, long long n) {
    if (n < 2) return 0.0;
    double mean = static_cast<double>(sum) / static_cast<double>(n);
    return std::max(0.0, (sq - static_cast<double>(n) * mean * mean) /
                             static_cast<double>(n - 1));
  };
  double var_b = variance(sq_b, sum_b, n_b);
  double var_w = variance(sq_w, sum_w, n_w);
  out.std_error = std::sqrt(var_b / static_cast<double>(n_b) +
                            var_w / static_cast<double>(n_w)) /
                  static_cast<double>(out.m_star);
  return out;
}

namespace {

// Reads the next PBM header token, skipping whitespace and comments.
std::string next_token(std::istream& in, std::vector<std::string>* comments) {
  std::string token;
  int ch = in.get();
  while (ch != EOF) {
    if (ch == '#') {
      std::string comment;
      std::getline(in, comment);
      if (comments) comments->push_back(comment);
      ch = in.get();
      continue;
    }
    if (std::isspace(ch)) {
      ch = in.get();
      continue;
    }
    break;
  }
  while (ch != EOF && !std::isspace(ch)) {
    token.push_back(static_cast<char>(ch));
    ch = in.get();
  }
  return token;
}

}  // namespace

bitmap read_pbm(std::istream& in, std::vector<std::string>* comments) {
  std::string magic = next_token(in, comments);
  if (magic != "P1" && magic != "P4") {
    throw std::invalid_argument("read_pbm: unsupported format '" + magic +
                                "' (only P1/P4 bitmaps)");
  }
  std::string ws = next_token(in, comments);
  std::string hs = next_token(in, comments);
  std::size_t width = 0;
  std::size_t height = 0;
  try {
    width = static_cast<std::size_t>(std::stoull(ws));
    height = static_cast<std::size_t>(std::stoull(hs));
  } catch (const std::exception&) {
    throw std::invalid_argument("read_pbm: malformed dimensions");
  }
  if (width == 0 || height == 0) throw std::invalid_argument("read_pbm: empty image");

  bitmap out(width, height);
  if (magic == "P1") {
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        int ch = in.get();
        while (ch != EOF && (std::isspace(ch) || ch == '#')) {
          if (ch == '#') {
            std::string comment;
            std::getline(in, comment);
          }
          ch = in.get();
        }
        if (ch != '0' && ch != '1') {
          throw std::invalid_argument("read_pbm: truncated or malformed P1 payload");
        }
        out.set(x, y, ch == '1');
      }
    }
  } else {
    // P4: single whitespace after the header, then packed rows, each padded
    // to a byte boundary, most significant bit first, 1 = black.
    std::size_t bytes_per_row = (width + 7) / 8;
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t b = 0; b < bytes_per_row; ++b) {
        int ch = in.get();
        if (ch == EOF) throw std::invalid_argument("read_pbm: truncated P4 payload");
        for (int bit = 0; bit < 8; ++bit) {
          std::size_t x = b * 8 + static_cast<std::size_t>(bit);
          if (x >= width) break;
          out.set(x, y, (ch >> (7 - bit)) & 1);
        }
      }
    }
  }
  return out;
}

void write_pbm(std::ostream& out, const bitmap& image, pbm_format format,
               std::span<const std::string> comments) {
  out << (format == pbm_format::p1 ? "P1" : "P4") << "\n";
  for (const std::string& comment : comments) out << "#" << comment << "\n";
  out << image.width() << " " << image.height() << "\n";
  if (format == pbm_format::p1) {
    for (std::size_t y = 0; y < image.height(); ++y) {
      for (std::size_t x = 0; x < image.width(); ++x) {
        if (x) out << ' ';
        out << (image.get(x, y) ? '1' : '0');
      }
      out << "\n";
    }
  } else {
    std::size_t bytes_per_row = (image.width() + 7) / 8;
    for (std::size_t y = 0; y < image.height(); ++y) {
      for (std::size_t b = 0; b < bytes_per_row; ++b) {
        unsigned char byte = 0;
        for (int bit = 0; bit < 8; ++bit) {
          std::size_t x = b * 8 + static_cast<std::size_t>(bit);
          if (x < image.width() && image.get(x, y)) {
            byte |= static_cast<unsigned char>(1u << (7 - bit));
          }
        }
        out.put(static_cast<char>(byte));
      }
    }
  }
}

void write_share_pbm(std::ostream& out, const share_image& share, pbm_format format) {
  std::ostringstream tag;
  tag << " stvss share=" << share.share_index << " fingerprint=" << std::hex
      << share.fingerprint;
  std::vector<std::string> comments{tag.str()};
  write_pbm(out, share.image, format, comments);
}

share_image read_share_pbm(std::istream& in) {
  std::vector<std::string> comments;
  share_image share;
  share.image = read_pbm(in, &comments);
  bool found = false;
  for (const std::string& comment : comments) {
    std::istringstream cs(comment);
    std::string word;
    cs >> word;
    if (word != "stvss") continue;
    while (cs >> word) {
      if (word.rfind("share=", 0) == 0) {
        share.share_index = std::stoi(word.substr(6));
        found = true;
      } else if (word.rfind("fingerprint=", 0) == 0) {
        share.fingerprint = std::stoull(word.substr(12), nullptr, 16);
      }
    }
  }
  if (!found) {
    throw std::invalid_argument("read_share_pbm: missing stvss share header comment");
  }
  return share;
}

}  // namespace stvss
