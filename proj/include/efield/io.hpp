#pragma once

// CSV and text persistence. Numbers are written in the shortest form that
// parses back to the same double, so every file round-trips exactly.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "efield/hydro.hpp"
#include "efield/kinetic.hpp"

namespace efield::io {

std::string format_double(double x);
// Throws IoError naming the text when it is not a complete number.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

// Coordinate column names: "x" for n = 1, else "x1".."xn".
std::vector<std::string> block_names(std::string_view prefix, std::size_t n);

class CsvWriter {
 public:
  // Creates parent directories. Throws IoError when the file cannot be opened.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(std::string_view text);
  void end_row();
  // Flushes and checks the stream; throws IoError on failure.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t filled_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws IoError when absent.
  std::size_t column(std::string_view name) const;
};

// Comma-separated, no quoting. Every row must have the header's width.
CsvTable read_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

// debtor_id,creditor_id,x...,y...,amount,vx...,vy...
void write_transactions(const std::filesystem::path& path,
                        std::span<const kinetic::TransactionRecord> records);
std::vector<kinetic::TransactionRecord> read_transactions(const std::filesystem::path& path);

// id,x...,vx...,u1..ul
void write_particles(const std::filesystem::path& path,
                     std::span<const kinetic::EParticle> particles);
std::vector<kinetic::EParticle> read_particles(const std::filesystem::path& path);

// x...,y...,CL,PC,v1..v2n,u1..u2n with one row per node. offset_cl and
// offset_pc are added to the stored densities (used to write CL0 + cl).
void write_snapshot(const std::filesystem::path& path, const hydro::FieldState& state,
                    double offset_cl = 0.0, double offset_pc = 0.0);
// Reads a snapshot written on the same grid; coordinates must match node
// positions to 1e-9 of the spacing.
hydro::FieldState read_snapshot(const std::filesystem::path& path, const espace::Grid& grid);

// x...,y...,CL,px...,py...,vx...,vy...
void write_field_density(const std::filesystem::path& path, const kinetic::FieldDensity& field);

// coords..., value; one row per node of a field.
void write_scalar_field(const std::filesystem::path& path, const espace::ScalarField& field,
                        const std::vector<std::string>& coord_names, std::string_view value_name);

}  // namespace efield::io
