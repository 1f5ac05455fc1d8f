#include "nilreg/lattice.hpp"

namespace nilreg {

int lattice_rank(const IntMat& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) return 0;
  IntMat m = rows;
  const int nr = static_cast<int>(m.rows());
  const int nc = static_cast<int>(m.cols());
  int rank = 0;
  Int prev = 1;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int pivot = -1;
    for (int r = rank; r < nr; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) m.row(pivot).swap(m.row(rank));
    for (int r = rank + 1; r < nr; ++r) {
      for (int c = col + 1; c < nc; ++c)
        m(r, c) = (m(rank, col) * m(r, c) - m(r, col) * m(rank, c)) / prev;
      m(r, col) = 0;
    }
    prev = m(rank, col);
    ++rank;
  }
  return rank;
}

int lattice_rank(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty()) return 0;
  const auto nc = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != nc)
      fail(ErrorKind::Precondition, "lattice_rank: unequal vector lengths");
  if (nc == 0) return 0;
  IntMat m(static_cast<int>(rows.size()), static_cast<int>(nc));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < nc; ++c) m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  return lattice_rank(m);
}

}  // namespace nilreg
