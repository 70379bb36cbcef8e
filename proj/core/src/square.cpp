#include "latinsq/square.hpp"

#include <charconv>
#include <sstream>

namespace latinsq {

namespace {

void check_order(int n) {
  if (n < 1 || n > kMaxOrder)
    throw std::invalid_argument("order must be in [1, " +
                                std::to_string(kMaxOrder) + "], got " +
                                std::to_string(n));
}

}  // namespace

LatinSquare::LatinSquare(int order, std::vector<std::uint8_t> grid)
    : n_(order), grid_(std::move(grid)) {
  check_order(n_);
  if (grid_.size() != std::size_t(n_) * n_)
    throw std::invalid_argument("grid size does not match order");
  std::vector<std::uint64_t> row_used(n_, 0), col_used(n_, 0);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      const std::uint8_t s = at(r, c);
      if (s >= n_)
        throw std::invalid_argument("symbol out of range at cell (" +
                                    std::to_string(r + 1) + "," +
                                    std::to_string(c + 1) + ")");
      const std::uint64_t bit = std::uint64_t(1) << s;
      if ((row_used[r] & bit) || (col_used[c] & bit))
        throw std::invalid_argument("repeated symbol at cell (" +
                                    std::to_string(r + 1) + "," +
                                    std::to_string(c + 1) + ")");
      row_used[r] |= bit;
      col_used[c] |= bit;
    }
  }
}

LatinSquare LatinSquare::cyclic(int order) {
  check_order(order);
  std::vector<std::uint8_t> g(std::size_t(order) * order);
  for (int r = 0; r < order; ++r)
    for (int c = 0; c < order; ++c)
      g[std::size_t(r) * order + c] = std::uint8_t((r + c) % order);
  return LatinSquare(order, std::move(g));
}

LatinSquare LatinSquare::from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = int(rows.size());
  check_order(n);
  std::vector<std::uint8_t> g;
  g.reserve(std::size_t(n) * n);
  for (const auto& row : rows) {
    if (int(row.size()) != n)
      throw std::invalid_argument("row length does not match order");
    for (int v : row) {
      if (v < 1 || v > n) throw std::invalid_argument("symbol out of range");
      g.push_back(std::uint8_t(v - 1));
    }
  }
  return LatinSquare(n, std::move(g));
}

PartialSquare::PartialSquare(int order, int symbol_bound)
    : n_(order),
      bound_(symbol_bound == 0 ? order : symbol_bound),
      grid_(std::size_t(order) * order, -1),
      row_used_(order, 0),
      col_used_(order, 0) {
  check_order(n_);
  if (bound_ < 1 || bound_ > n_)
    throw std::invalid_argument("symbol bound must be in [1, order]");
}

PartialSquare PartialSquare::from_rows(const std::vector<std::vector<int>>& rows,
                                       int symbol_bound) {
  const int n = int(rows.size());
  PartialSquare p(n, symbol_bound);
  for (int r = 0; r < n; ++r) {
    if (int(rows[r].size()) != n)
      throw std::invalid_argument("row length does not match order");
    for (int c = 0; c < n; ++c)
      if (rows[r][c] != 0) p.set(r, c, std::uint8_t(rows[r][c] - 1));
  }
  return p;
}

PartialSquare PartialSquare::of(const LatinSquare& square) {
  PartialSquare p(square.order());
  for (int r = 0; r < square.order(); ++r)
    for (int c = 0; c < square.order(); ++c) p.set(r, c, square.at(r, c));
  return p;
}

std::optional<std::uint8_t> PartialSquare::at(int r, int c) const {
  const std::int16_t v = grid_[std::size_t(r) * n_ + c];
  if (v < 0) return std::nullopt;
  return std::uint8_t(v);
}

void PartialSquare::set(int r, int c, std::uint8_t s) {
  if (r < 0 || r >= n_ || c < 0 || c >= n_)
    throw std::invalid_argument("cell out of range");
  if (s >= bound_)
    throw std::invalid_argument("symbol " + std::to_string(s + 1) +
                                " above bound " + std::to_string(bound_) +
                                " at cell (" + std::to_string(r + 1) + "," +
                                std::to_string(c + 1) + ")");
  if (filled(r, c)) unset(r, c);
  const std::uint64_t bit = std::uint64_t(1) << s;
  if ((row_used_[r] & bit) || (col_used_[c] & bit))
    throw std::invalid_argument("repeated symbol at cell (" +
                                std::to_string(r + 1) + "," +
                                std::to_string(c + 1) + ")");
  grid_[std::size_t(r) * n_ + c] = s;
  row_used_[r] |= bit;
  col_used_[c] |= bit;
  ++filled_;
}

void PartialSquare::unset(int r, int c) {
  const std::int16_t v = grid_[std::size_t(r) * n_ + c];
  if (v < 0) return;
  const std::uint64_t bit = std::uint64_t(1) << v;
  row_used_[r] &= ~bit;
  col_used_[c] &= ~bit;
  grid_[std::size_t(r) * n_ + c] = -1;
  --filled_;
}

std::vector<std::tuple<int, int, std::uint8_t>> PartialSquare::entries() const {
  std::vector<std::tuple<int, int, std::uint8_t>> out;
  out.reserve(filled_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      if (auto s = at(r, c)) out.emplace_back(r, c, *s);
  return out;
}

bool PartialSquare::contained_in(const LatinSquare& square) const {
  if (square.order() != n_) return false;
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c)
      if (auto s = at(r, c); s && *s != square.at(r, c)) return false;
  return true;
}

RoleMap RoleMap::inverse() const {
  RoleMap out;
  for (int k = 0; k < 3; ++k) out.src[src[k]] = k;
  return out;
}

bool RoleMap::valid() const {
  std::array<bool, 3> seen{false, false, false};
  for (int k : src) {
    if (k < 0 || k > 2 || seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

LatinSquare conjugate(const LatinSquare& square, const RoleMap& map) {
  if (!map.valid()) throw std::invalid_argument("invalid role map");
  const int n = square.order();
  std::vector<std::uint8_t> g(std::size_t(n) * n, 0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const std::array<int, 3> x{r, c, square.at(r, c)};
      g[std::size_t(x[map.src[0]]) * n + x[map.src[1]]] =
          std::uint8_t(x[map.src[2]]);
    }
  }
  return LatinSquare(n, std::move(g));
}

namespace {

struct TokenReader {
  std::string_view text;
  std::size_t pos = 0;

  std::optional<std::string_view> next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) return std::nullopt;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  }
};

int parse_int(std::string_view tok, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(std::string("expected ") + what + ", got \"" +
                     std::string(tok) + "\"");
  return value;
}

// Shared body for both square flavours. Headers ("bound m") are only legal
// for partial squares.
PartialSquare parse_grid(std::string_view text, bool allow_headers) {
  TokenReader rd{text};
  int bound = 0;
  auto tok = rd.next();
  while (tok && !tok->empty() &&
         !std::isdigit(static_cast<unsigned char>((*tok)[0]))) {
    if (!allow_headers)
      throw ParseError("unexpected header \"" + std::string(*tok) + "\"");
    if (*tok == "bound") {
      auto val = rd.next();
      if (!val) throw ParseError("missing value after \"bound\"");
      bound = parse_int(*val, "bound");
    } else {
      throw ParseError("unknown header \"" + std::string(*tok) + "\"");
    }
    tok = rd.next();
  }
  if (!tok) throw ParseError("empty input");
  const int n = parse_int(*tok, "order");
  if (n < 1 || n > kMaxOrder)
    throw ParseError("order must be in [1, " + std::to_string(kMaxOrder) + "]");
  if (bound < 0 || bound > n) throw ParseError("bound must be in [1, order]");
  PartialSquare p(n, bound);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      auto cell = rd.next();
      if (!cell)
        throw ParseError("unexpected end of input at cell (" +
                             std::to_string(r + 1) + "," + std::to_string(c + 1) + ")",
                         r + 1, c + 1);
      const int v = parse_int(*cell, "symbol");
      if (v == 0) continue;
      if (v < 1 || v > n)
        throw ParseError("symbol " + std::to_string(v) + " out of range at cell (" +
                             std::to_string(r + 1) + "," + std::to_string(c + 1) + ")",
                         r + 1, c + 1);
      try {
        p.set(r, c, std::uint8_t(v - 1));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()), r + 1, c + 1);
      }
    }
  }
  if (rd.next()) throw ParseError("trailing content after grid");
  return p;
}

}  // namespace

LatinSquare parse_square(std::string_view text) {
  PartialSquare p = parse_grid(text, /*allow_headers=*/false);
  const int n = p.order();
  std::vector<std::uint8_t> g(std::size_t(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      auto s = p.at(r, c);
      if (!s)
        throw ParseError("empty cell (" + std::to_string(r + 1) + "," +
                             std::to_string(c + 1) + ") in a full square",
                         r + 1, c + 1);
      g[std::size_t(r) * n + c] = *s;
    }
  return LatinSquare(n, std::move(g));
}

PartialSquare parse_partial(std::string_view text) {
  return parse_grid(text, /*allow_headers=*/true);
}

std::string serialize(const LatinSquare& square) {
  std::ostringstream out;
  const int n = square.order();
  out << n << '\n';
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c) out << ' ';
      out << int(square.at(r, c)) + 1;
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize(const PartialSquare& square) {
  std::ostringstream out;
  const int n = square.order();
  if (square.symbol_bound() != n) out << "bound " << square.symbol_bound() << '\n';
  out << n << '\n';
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c) out << ' ';
      auto s = square.at(r, c);
      out << (s ? int(*s) + 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace latinsq
