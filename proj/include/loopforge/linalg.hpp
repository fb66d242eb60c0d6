#pragma once

#include <cstddef>
#include <vector>

namespace loopforge {

double log_sum_exp(const std::vector<double>& x);

// Sparse bipartite amplitude matrix M[row, col].
struct AmplitudeEntry {
  int row;
  int col;
  double amp;
};

struct SchmidtSpectrum {
  std::vector<double> weights;  // normalized squared singular values, descending
  std::size_t blocks = 0;
  std::size_t largest_block = 0;
};

// Splits M into connected blocks of its support graph and diagonalizes the
// smaller Gram matrix of each block. Amplitudes need not be normalized.
SchmidtSpectrum schmidt_spectrum(const std::vector<AmplitudeEntry>& entries, int rows, int cols);
double entropy_of(const std::vector<double>& probs);

}  // namespace loopforge
