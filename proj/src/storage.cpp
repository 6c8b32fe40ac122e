#include "starpir/storage.hpp"

namespace starpir {

Database::Database(const FieldSpec& field, std::size_t file_count, std::size_t rows_per_file,
                   std::size_t row_length, MatrixFp data)
    : file_count_(file_count), rows_per_file_(rows_per_file), data_(std::move(data)) {
  if (file_count_ == 0 || rows_per_file_ == 0 || row_length == 0) {
    throw InvalidArgument("Database: m, b, k must all be positive");
  }
  if (!(data_.field() == field)) throw FieldMismatch("Database: data field mismatch");
  if (data_.rows() != file_count_ * rows_per_file_ || data_.cols() != row_length) {
    throw DimensionMismatch("Database: data must be (b*m) x k");
  }
}

Database Database::from_files(const FieldSpec& field, const std::vector<MatrixFp>& files) {
  if (files.empty()) throw InvalidArgument("Database: no files");
  const std::size_t b = files.front().rows();
  const std::size_t k = files.front().cols();
  MatrixFp data(field, files.size() * b, k);
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (files[i].rows() != b || files[i].cols() != k) {
      throw DimensionMismatch("Database: files must share the same shape");
    }
    if (!(files[i].field() == field)) throw FieldMismatch("Database: file field mismatch");
    for (std::size_t r = 0; r < b; ++r)
      for (std::size_t c = 0; c < k; ++c) data.set(i * b + r, c, files[i].at(r, c));
  }
  return Database(field, files.size(), b, k, std::move(data));
}

Database Database::random(const FieldSpec& field, std::size_t file_count,
                          std::size_t rows_per_file, std::size_t row_length, Rng& rng) {
  MatrixFp data(field, file_count * rows_per_file, row_length);
  for (std::size_t r = 0; r < data.rows(); ++r)
    for (std::size_t c = 0; c < data.cols(); ++c)
      data.set(r, c, rng.next_below(field.modulus()));
  return Database(field, file_count, rows_per_file, row_length, std::move(data));
}

MatrixFp Database::file(std::size_t index) const {
  if (index >= file_count_) throw IndexOutOfRange("Database::file");
  MatrixFp out(data_.field(), rows_per_file_, data_.cols());
  for (std::size_t r = 0; r < rows_per_file_; ++r)
    for (std::size_t c = 0; c < data_.cols(); ++c)
      out.set(r, c, data_.at(index * rows_per_file_ + r, c));
  return out;
}

std::vector<ServerNode> encode(const Database& db, const LinearCode& storage_code) {
  if (!(db.field() == storage_code.field())) throw FieldMismatch("encode: fields differ");
  if (storage_code.dimension() != db.row_length()) {
    throw DimensionMismatch("encode: storage code dimension must equal the file row length");
  }
  const MatrixFp encoded = db.data() * storage_code.generator();
  std::vector<ServerNode> nodes;
  nodes.reserve(storage_code.length());
  for (std::size_t j = 0; j < storage_code.length(); ++j) {
    MatrixFp column(db.field(), encoded.rows(), 1);
    for (std::size_t r = 0; r < encoded.rows(); ++r) column.set(r, 0, encoded.at(r, j));
    nodes.push_back({j, db.file_count(), db.rows_per_file(), std::move(column)});
  }
  return nodes;
}

FieldElement respond(const ServerNode& node, const MatrixFp& query) {
  if (!(query.field() == node.column.field())) throw FieldMismatch("respond: fields differ");
  if (query.rows() != 1 || query.cols() != node.column.rows()) {
    throw DimensionMismatch("respond: query must be 1 x (b*m)");
  }
  const MatrixFp r = query * node.column;
  return {node.column.field(), r.at(0, 0)};
}

Database erase_and_recover(std::span<const ServerNode> nodes, const LinearCode& storage_code,
                           const std::set<std::size_t>& failed) {
  const std::size_t n = storage_code.length();
  const std::size_t k = storage_code.dimension();
  for (std::size_t j : failed) {
    if (j >= n) throw IndexOutOfRange("erase_and_recover: failed index out of range");
  }
  std::vector<const ServerNode*> survivors;
  for (const ServerNode& node : nodes) {
    if (!failed.contains(node.index)) survivors.push_back(&node);
  }
  if (survivors.size() < k) {
    throw TooManyFailures("erase_and_recover: fewer surviving servers than the code dimension");
  }
  // greedy scan for an information set among the surviving columns
  std::vector<std::size_t> chosen_cols;
  std::vector<const ServerNode*> chosen_nodes;
  for (const ServerNode* node : survivors) {
    if (chosen_cols.size() == k) break;
    std::vector<std::size_t> candidate = chosen_cols;
    candidate.push_back(node->index);
    if (rank(storage_code.generator().select_columns(candidate)) == candidate.size()) {
      chosen_cols = std::move(candidate);
      chosen_nodes.push_back(node);
    }
  }
  if (chosen_cols.size() < k) {
    throw NoInformationSet("erase_and_recover: surviving columns contain no information set");
  }
  const std::size_t bm = chosen_nodes.front()->column.rows();
  MatrixFp y_cols(storage_code.field(), bm, k);  // restriction of Y to the chosen columns
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < bm; ++r) y_cols.set(r, c, chosen_nodes[c]->column.at(r, 0));
  }
  // X * G_K = Y_K  =>  G_K^T * X^T = Y_K^T
  const MatrixFp g_k = storage_code.generator().select_columns(chosen_cols);
  const MatrixFp x = solve(g_k.transpose(), y_cols.transpose()).transpose();
  const std::size_t m = chosen_nodes.front()->file_count;
  const std::size_t b = chosen_nodes.front()->rows_per_file;
  return Database(storage_code.field(), m, b, k, x);
}

}  // namespace starpir
