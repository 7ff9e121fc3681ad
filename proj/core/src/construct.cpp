#include "stvss/construct.hpp"

#include <sstream>
#include <stdexcept>

namespace stvss {

std::string_view to_string(permutation_method method) {
  switch (method) {
    case permutation_method::full:
      return "full";
    case permutation_method::per_block_independent:
      return "per_block";
    case permutation_method::synchronized:
      return "synchronized";
  }
  return "?";
}

std::optional<permutation_method> parse_permutation_method(std::string_view text) {
  if (text == "full" || text == "method1") return permutation_method::full;
  if (text == "per_block" || text == "per-block" || text == "method2") {
    return permutation_method::per_block_independent;
  }
  if (text == "synchronized" || text == "sync" || text == "method3") {
    return permutation_method::synchronized;
  }
  return std::nullopt;
}

std::string_view to_string(stvss_kind kind) {
  return kind == stvss_kind::vector_dup ? "vector_dup" : "pixel_dup";
}

std::optional<stvss_kind> parse_stvss_kind(std::string_view text) {
  if (text == "vector_dup" || text == "vector") return stvss_kind::vector_dup;
  if (text == "pixel_dup" || text == "pixel") return stvss_kind::pixel_dup;
  return std::nullopt;
}

namespace {

void validate_params(stvss_params params) {
  if (params.nx < 1 || params.ny < 1) {
    throw std::invalid_argument("stvss: requires n_x >= 1 and n_y >= 1");
  }
}

boolean_matrix duplicate_vectors(const boolean_matrix& base, stvss_params p) {
  std::size_t m = base.cols();
  boolean_matrix out(base.rows() * static_cast<std::size_t>(p.ny),
                     m * static_cast<std::size_t>(p.nx));
  for (std::size_t r = 0; r < base.rows(); ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (!base.get(r, c)) continue;
      for (int ry = 0; ry < p.ny; ++ry) {
        for (int bx = 0; bx < p.nx; ++bx) {
          out.set(r * static_cast<std::size_t>(p.ny) + static_cast<std::size_t>(ry),
                  static_cast<std::size_t>(bx) * m + c, true);
        }
      }
    }
  }
  return out;
}

boolean_matrix duplicate_pixels(const boolean_matrix& base, stvss_params p) {
  std::size_t m = base.cols();
  boolean_matrix out(base.rows() * static_cast<std::size_t>(p.ny),
                     m * static_cast<std::size_t>(p.nx));
  for (std::size_t r = 0; r < base.rows(); ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if (!base.get(r, c)) continue;
      for (int ry = 0; ry < p.ny; ++ry) {
        for (int rx = 0; rx < p.nx; ++rx) {
          out.set(r * static_cast<std::size_t>(p.ny) + static_cast<std::size_t>(ry),
                  c * static_cast<std::size_t>(p.nx) + static_cast<std::size_t>(rx), true);
        }
      }
    }
  }
  return out;
}

}  // namespace

stvss_pair::stvss_pair(boolean_matrix b0s, boolean_matrix b1s, basis_pair base,
                       stvss_params params, stvss_kind kind)
    : b0_star_(std::move(b0s)),
      b1_star_(std::move(b1s)),
      base_(std::move(base)),
      params_(params),
      kind_(kind) {}

stvss_pair stvss_pair::from_parts(boolean_matrix b0_star, boolean_matrix b1_star, basis_pair base,
                                  stvss_params params, stvss_kind kind) {
  validate_params(params);
  std::size_t rows = static_cast<std::size_t>(base.n()) * static_cast<std::size_t>(params.ny);
  std::size_t cols = static_cast<std::size_t>(base.m()) * static_cast<std::size_t>(params.nx);
  if (b0_star.rows() != rows || b0_star.cols() != cols || b1_star.rows() != rows ||
      b1_star.cols() != cols) {
    throw std::invalid_argument("stvss_pair: star matrices must be (n*n_y) x (m*n_x)");
  }
  return stvss_pair(std::move(b0_star), std::move(b1_star), std::move(base), params, kind);
}

boolean_matrix stvss_pair::share_block(pixel_color color, int share) const {
  if (share < 1 || share > n()) {
    throw std::out_of_range("share_block: share index out of range");
  }
  std::size_t first = static_cast<std::size_t>(share - 1) * static_cast<std::size_t>(params_.ny);
  return star(color).row_slice(first, static_cast<std::size_t>(params_.ny));
}

stvss_pair construct_stvss(const basis_pair& base, stvss_params params) {
  validate_params(params);
  return stvss_pair(duplicate_vectors(base.b0(), params), duplicate_vectors(base.b1(), params),
                    base, params, stvss_kind::vector_dup);
}

stvss_pair construct_pixel_duplication(const basis_pair& base, stvss_params params) {
  validate_params(params);
  return stvss_pair(duplicate_pixels(base.b0(), params), duplicate_pixels(base.b1(), params),
                    base, params, stvss_kind::pixel_dup);
}

stvss_pair construct(const basis_pair& base, stvss_params params, stvss_kind kind) {
  return kind == stvss_kind::vector_dup ? construct_stvss(base, params)
                                        : construct_pixel_duplication(base, params);
}

stvss_pair parse_stvss_pair(std::istream& in) {
  std::string header;
  do {
    if (!std::getline(in, header)) {
      throw std::invalid_argument("stvss pair: missing header");
    }
  } while (header.find_first_not_of(" \t\r") == std::string::npos);
  std::istringstream hs(header);
  stvss_params params;
  std::string kind_token;
  if (!(hs >> params.nx >> params.ny >> kind_token)) {
    throw std::invalid_argument("stvss pair: header must be 'NX NY KIND'");
  }
  auto kind = parse_stvss_kind(kind_token);
  if (!kind) throw std::invalid_argument("stvss pair: unknown kind '" + kind_token + "'");
  validate_params(params);
  basis_pair base = parse_basis_pair(in);
  return construct(base, params, *kind);
}

stvss_pair parse_stvss_pair(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_stvss_pair(in);
}

std::string format_stvss_pair(const stvss_pair& pair) {
  std::ostringstream out;
  out << pair.params().nx << " " << pair.params().ny << " " << to_string(pair.kind()) << "\n";
  out << format_basis_pair(pair.base());
  return out.str();
}

}  // namespace stvss
