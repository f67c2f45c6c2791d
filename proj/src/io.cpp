#include "efield/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "efield/error.hpp"

namespace efield::io {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end)
    throw IoError("not a number: '" + std::string(text) + "'");
  return x;
}

long long parse_int(std::string_view text) {
  long long x = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, x);
  if (res.ec != std::errc() || res.ptr != end)
    throw IoError("not an integer: '" + std::string(text) + "'");
  return x;
}

std::vector<std::string> block_names(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  if (n == 1) {
    names.emplace_back(prefix);
    return names;
  }
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return names;
}

namespace {

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<std::string> numbered(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return names;
}

void ensure_parent(const fs::path& path) {
  const fs::path parent = path.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Number of leading columns of the table named like block_names(prefix, n).
std::size_t block_width(const CsvTable& t, std::size_t from, std::string_view prefix) {
  if (from < t.header.size() && t.header[from] == prefix) return 1;
  std::size_t n = 0;
  while (from + n < t.header.size() &&
         t.header[from + n] == std::string(prefix) + std::to_string(n + 1))
    ++n;
  return n;
}

void expect_header(const CsvTable& t, const std::vector<std::string>& want,
                   const fs::path& path) {
  if (t.header != want) throw IoError(path.string() + ": unexpected CSV header");
}

}  // namespace

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  ensure_parent(path);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double x) { return cell(std::string_view(format_double(x))); }

CsvWriter& CsvWriter::cell(long long x) { return cell(std::string_view(std::to_string(x))); }

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (filled_ == columns_) throw IoError(path_.string() + ": row wider than header");
  if (filled_ > 0) out_ << ',';
  out_ << text;
  ++filled_;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw IoError(path_.string() + ": row narrower than header");
  out_ << '\n';
  filled_ = 0;
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("write failed: " + path_.string());
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw IoError("missing CSV column '" + std::string(name) + "'");
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != t.header.size())
      throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                    std::to_string(t.header.size()) + " fields, got " +
                    std::to_string(row.size()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_text(const fs::path& path, std::string_view text) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_transactions(const fs::path& path,
                        std::span<const kinetic::TransactionRecord> records) {
  const std::size_t n = records.empty() ? 1 : records.front().debtor_coords.size();
  CsvWriter w(path, concat({{"debtor_id", "creditor_id"},
                            block_names("x", n),
                            block_names("y", n),
                            {"amount"},
                            block_names("vx", n),
                            block_names("vy", n)}));
  for (const auto& r : records) {
    if (r.debtor_coords.size() != n || r.creditor_coords.size() != n ||
        r.debtor_velocity.size() != n || r.creditor_velocity.size() != n)
      throw InvalidArgument("transactions of mixed dimension");
    w.cell(static_cast<long long>(r.debtor_id)).cell(static_cast<long long>(r.creditor_id));
    for (double x : r.debtor_coords) w.cell(x);
    for (double y : r.creditor_coords) w.cell(y);
    w.cell(r.amount);
    for (double v : r.debtor_velocity) w.cell(v);
    for (double v : r.creditor_velocity) w.cell(v);
    w.end_row();
  }
  w.close();
}

std::vector<kinetic::TransactionRecord> read_transactions(const fs::path& path) {
  const CsvTable t = read_csv(path);
  const std::size_t n = block_width(t, 2, "x");
  if (n == 0) throw IoError(path.string() + ": no coordinate columns");
  expect_header(t,
                concat({{"debtor_id", "creditor_id"},
                        block_names("x", n),
                        block_names("y", n),
                        {"amount"},
                        block_names("vx", n),
                        block_names("vy", n)}),
                path);
  std::vector<kinetic::TransactionRecord> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    kinetic::TransactionRecord r;
    std::size_t c = 0;
    r.debtor_id = parse_int(row[c++]);
    r.creditor_id = parse_int(row[c++]);
    for (std::size_t i = 0; i < n; ++i) r.debtor_coords.push_back(parse_double(row[c++]));
    for (std::size_t i = 0; i < n; ++i) r.creditor_coords.push_back(parse_double(row[c++]));
    r.amount = parse_double(row[c++]);
    for (std::size_t i = 0; i < n; ++i) r.debtor_velocity.push_back(parse_double(row[c++]));
    for (std::size_t i = 0; i < n; ++i) r.creditor_velocity.push_back(parse_double(row[c++]));
    out.push_back(std::move(r));
  }
  return out;
}

void write_particles(const fs::path& path, std::span<const kinetic::EParticle> particles) {
  const std::size_t n = particles.empty() ? 1 : particles.front().coords.size();
  const std::size_t l = particles.empty() ? 0 : particles.front().variables.size();
  CsvWriter w(path, concat({{"id"}, block_names("x", n), block_names("vx", n), numbered("u", l)}));
  for (const auto& p : particles) {
    if (p.coords.size() != n || p.velocity.size() != n || p.variables.size() != l)
      throw InvalidArgument("particles of mixed shape");
    w.cell(static_cast<long long>(p.id));
    for (double x : p.coords) w.cell(x);
    for (double v : p.velocity) w.cell(v);
    for (double u : p.variables) w.cell(u);
    w.end_row();
  }
  w.close();
}

std::vector<kinetic::EParticle> read_particles(const fs::path& path) {
  const CsvTable t = read_csv(path);
  const std::size_t n = block_width(t, 1, "x");
  if (n == 0) throw IoError(path.string() + ": no coordinate columns");
  const std::size_t l = t.header.size() - 1 - 2 * n;
  expect_header(t, concat({{"id"}, block_names("x", n), block_names("vx", n), numbered("u", l)}),
                path);
  std::vector<kinetic::EParticle> out;
  for (const auto& row : t.rows) {
    kinetic::EParticle p;
    std::size_t c = 0;
    p.id = parse_int(row[c++]);
    for (std::size_t i = 0; i < n; ++i) p.coords.push_back(parse_double(row[c++]));
    for (std::size_t i = 0; i < n; ++i) p.velocity.push_back(parse_double(row[c++]));
    for (std::size_t i = 0; i < l; ++i) p.variables.push_back(parse_double(row[c++]));
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

std::vector<std::string> field_coord_names(const espace::Grid& grid) {
  const std::size_t n = grid.rank() / 2;
  return concat({block_names("x", n), block_names("y", n)});
}

void write_coords(CsvWriter& w, const espace::Grid& grid, std::size_t node,
                  std::vector<double>& z) {
  grid.node_coords(node, z);
  for (double c : z) w.cell(c);
}

}  // namespace

void write_snapshot(const fs::path& path, const hydro::FieldState& state, double offset_cl,
                    double offset_pc) {
  state.check_shape();
  const espace::Grid& grid = state.grid();
  const std::size_t r = grid.rank();
  CsvWriter w(path, concat({field_coord_names(grid), {"CL", "PC"}, numbered("v", r),
                            numbered("u", r)}));
  std::vector<double> z(r);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    write_coords(w, grid, i, z);
    w.cell(state.cl[i] + offset_cl).cell(state.pc[i] + offset_pc);
    for (std::size_t c = 0; c < r; ++c) w.cell(state.v.at(c, i));
    for (std::size_t c = 0; c < r; ++c) w.cell(state.u.at(c, i));
    w.end_row();
  }
  w.close();
}

hydro::FieldState read_snapshot(const fs::path& path, const espace::Grid& grid) {
  const CsvTable t = read_csv(path);
  const std::size_t r = grid.rank();
  expect_header(t, concat({field_coord_names(grid), {"CL", "PC"}, numbered("v", r),
                           numbered("u", r)}),
                path);
  if (t.rows.size() != grid.node_count())
    throw IoError(path.string() + ": expected " + std::to_string(grid.node_count()) +
                  " rows, got " + std::to_string(t.rows.size()));
  hydro::FieldState s = hydro::FieldState::zeros(grid);
  std::vector<double> z(r);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const auto& row = t.rows[i];
    grid.node_coords(i, z);
    for (std::size_t a = 0; a < r; ++a)
      if (std::abs(parse_double(row[a]) - z[a]) > 1e-9 * grid.spacing(a))
        throw IoError(path.string() + ": row " + std::to_string(i + 1) +
                      " does not match the grid node");
    std::size_t c = r;
    s.cl[i] = parse_double(row[c++]);
    s.pc[i] = parse_double(row[c++]);
    for (std::size_t k = 0; k < r; ++k) s.v.at(k, i) = parse_double(row[c++]);
    for (std::size_t k = 0; k < r; ++k) s.u.at(k, i) = parse_double(row[c++]);
  }
  return s;
}

void write_field_density(const fs::path& path, const kinetic::FieldDensity& field) {
  const espace::Grid& grid = field.cl.grid();
  const std::size_t n = grid.rank() / 2;
  CsvWriter w(path, concat({field_coord_names(grid), {"CL"}, block_names("px", n),
                            block_names("py", n), block_names("vx", n), block_names("vy", n)}));
  std::vector<double> z(grid.rank());
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    write_coords(w, grid, i, z);
    w.cell(field.cl[i]);
    for (const auto* f : {&field.px, &field.py, &field.vx, &field.vy})
      for (std::size_t c = 0; c < n; ++c) w.cell(f->at(c, i));
    w.end_row();
  }
  w.close();
}

void write_scalar_field(const fs::path& path, const espace::ScalarField& field,
                        const std::vector<std::string>& coord_names, std::string_view value_name) {
  const espace::Grid& grid = field.grid();
  if (coord_names.size() != grid.rank()) throw InvalidArgument("coordinate names do not match");
  auto header = coord_names;
  header.emplace_back(value_name);
  CsvWriter w(path, header);
  std::vector<double> z(grid.rank());
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    write_coords(w, grid, i, z);
    w.cell(field[i]);
    w.end_row();
  }
  w.close();
}

}  // namespace efield::io
