#pragma once

#include <set>
#include <span>
#include <vector>

#include "starpir/code.hpp"
#include "starpir/rng.hpp"

namespace starpir {

// The plaintext database: m files of b rows by k symbols, stacked into a
// (b*m) x k matrix. File i occupies rows i*b .. (i+1)*b - 1 (0-based).
class Database {
 public:
  Database(const FieldSpec& field, std::size_t file_count, std::size_t rows_per_file,
           std::size_t row_length, MatrixFp data);

  static Database from_files(const FieldSpec& field, const std::vector<MatrixFp>& files);
  static Database random(const FieldSpec& field, std::size_t file_count,
                         std::size_t rows_per_file, std::size_t row_length, Rng& rng);

  const FieldSpec& field() const noexcept { return data_.field(); }
  std::size_t file_count() const noexcept { return file_count_; }
  std::size_t rows_per_file() const noexcept { return rows_per_file_; }
  std::size_t row_length() const noexcept { return data_.cols(); }
  const MatrixFp& data() const noexcept { return data_; }

  MatrixFp file(std::size_t index) const;  // b x k block

  bool operator==(const Database& o) const noexcept {
    return file_count_ == o.file_count_ && rows_per_file_ == o.rows_per_file_ &&
           data_ == o.data_;
  }

 private:
  std::size_t file_count_;
  std::size_t rows_per_file_;
  MatrixFp data_;
};

// One storage server: holds a single column of Y = X * G_C, never the full
// encoded matrix. The layout parameters are known to every server.
struct ServerNode {
  std::size_t index;          // position j within [0, n)
  std::size_t file_count;     // m
  std::size_t rows_per_file;  // b
  MatrixFp column;            // (b*m) x 1
};

// Encodes the database with the storage code and distributes the columns.
std::vector<ServerNode> encode(const Database& db, const LinearCode& storage_code);

// Inner product of a 1 x (b*m) query with the stored column.
FieldElement respond(const ServerNode& node, const MatrixFp& query);

// Rebuilds the database from the surviving columns by solving against the
// generator submatrix of an information set.
//   TooManyFailures   - fewer than k servers survive
//   NoInformationSet  - survivors' columns do not span the message space
Database erase_and_recover(std::span<const ServerNode> nodes, const LinearCode& storage_code,
                           const std::set<std::size_t>& failed);

}  // namespace starpir
