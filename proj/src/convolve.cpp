#include "lenia/convolve.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lenia {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution on
// per-instance buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_kernel_fits(const Board& board, const ConvKernel& kernel) {
  if (kernel.size() > board.width || kernel.size() > board.height) {
    throw std::invalid_argument("convolve: kernel size " + std::to_string(kernel.size()) +
                                " exceeds board " + std::to_string(board.width) + "x" +
                                std::to_string(board.height));
  }
  if (board.cells.size() != static_cast<std::size_t>(board.width) * board.height) {
    throw std::invalid_argument("convolve: malformed board");
  }
}

}  // namespace

std::vector<double> convolve_direct(const Board& board, const ConvKernel& kernel) {
  check_kernel_fits(board, kernel);
  const int h = board.height;
  const int w = board.width;
  const int s = kernel.size();
  const int c = s / 2;

  std::vector<double> out(board.cells.size(), 0.0);
  if (kernel.sum() == 0.0) {
    return out;
  }

  // Wrapped source indices per kernel offset, hoisted out of the cell loop.
  std::vector<int> row_of(s), col_of(s);
  const double inv_sum = 1.0 / kernel.sum();
  for (int y = 0; y < h; ++y) {
    for (int j = 0; j < s; ++j) {
      row_of[j] = (((y + j - c) % h) + h) % h;
    }
    for (int x = 0; x < w; ++x) {
      for (int i = 0; i < s; ++i) {
        col_of[i] = (((x + i - c) % w) + w) % w;
      }
      double acc = 0.0;
      for (int j = 0; j < s; ++j) {
        const double* row = board.cells.data() + static_cast<std::size_t>(row_of[j]) * w;
        const double* kr = kernel.weights().data() + static_cast<std::size_t>(j) * s;
        for (int i = 0; i < s; ++i) {
          acc += kr[i] * row[col_of[i]];
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = acc * inv_sum;
    }
  }
  return out;
}

struct FftConvolver::Impl {
  int height = 0;
  int width = 0;
  int spec_width = 0;  // width / 2 + 1 (r2c layout)
  double kernel_sum = 0.0;
  int kernel_size = 0;
  bool kernel_loaded = false;

  double* real_buf = nullptr;        // h * w
  fftw_complex* spec_buf = nullptr;  // h * spec_width
  fftw_complex* kernel_spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  Impl(int h, int w) : height(h), width(w), spec_width(w / 2 + 1) {
    if (h <= 0 || w <= 0) {
      throw std::invalid_argument("FftConvolver: dimensions must be positive");
    }
    const std::size_t n_real = static_cast<std::size_t>(h) * w;
    const std::size_t n_spec = static_cast<std::size_t>(h) * spec_width;
    real_buf = fftw_alloc_real(n_real);
    spec_buf = fftw_alloc_complex(n_spec);
    kernel_spec = fftw_alloc_complex(n_spec);
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE picks the plan from heuristics alone, so identical
    // sizes always get identical algorithms and bit-identical output.
    fwd = fftw_plan_dft_r2c_2d(h, w, real_buf, spec_buf, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_2d(h, w, spec_buf, real_buf, FFTW_ESTIMATE);
  }

  ~Impl() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      if (fwd) fftw_destroy_plan(fwd);
      if (inv) fftw_destroy_plan(inv);
    }
    fftw_free(real_buf);
    fftw_free(spec_buf);
    fftw_free(kernel_spec);
  }
};

FftConvolver::FftConvolver(int height, int width) : impl_(std::make_unique<Impl>(height, width)) {}
FftConvolver::~FftConvolver() = default;
FftConvolver::FftConvolver(FftConvolver&&) noexcept = default;
FftConvolver& FftConvolver::operator=(FftConvolver&&) noexcept = default;

int FftConvolver::height() const { return impl_->height; }
int FftConvolver::width() const { return impl_->width; }

void FftConvolver::load_kernel(const ConvKernel& kernel) {
  Impl& im = *impl_;
  if (kernel.size() > im.width || kernel.size() > im.height) {
    throw std::invalid_argument("convolve: kernel size " + std::to_string(kernel.size()) +
                                " exceeds board " + std::to_string(im.width) + "x" +
                                std::to_string(im.height));
  }
  im.kernel_sum = kernel.sum();
  im.kernel_size = kernel.size();
  im.kernel_loaded = true;
  if (im.kernel_sum == 0.0) {
    return;
  }

  const int s = kernel.size();
  const int c = s / 2;
  const std::size_t n_real = static_cast<std::size_t>(im.height) * im.width;
  std::memset(im.real_buf, 0, n_real * sizeof(double));
  // Pad the kernel so that weight (j, i) lands at wrapped offset
  // (j - c, i - c); the spectrum then realizes the anchored correlation.
  for (int j = 0; j < s; ++j) {
    const int v = (((j - c) % im.height) + im.height) % im.height;
    for (int i = 0; i < s; ++i) {
      const int u = (((i - c) % im.width) + im.width) % im.width;
      im.real_buf[static_cast<std::size_t>(v) * im.width + u] = kernel.weight(j, i);
    }
  }
  fftw_execute(im.fwd);
  std::memcpy(im.kernel_spec, im.spec_buf,
              static_cast<std::size_t>(im.height) * im.spec_width * sizeof(fftw_complex));
}

void FftConvolver::convolve(const Board& board, std::vector<double>& out) {
  Impl& im = *impl_;
  if (!im.kernel_loaded) {
    throw std::logic_error("FftConvolver: no kernel loaded");
  }
  if (board.height != im.height || board.width != im.width) {
    throw std::invalid_argument("FftConvolver: board is " + std::to_string(board.width) + "x" +
                                std::to_string(board.height) + ", convolver expects " +
                                std::to_string(im.width) + "x" + std::to_string(im.height));
  }
  const std::size_t n_real = static_cast<std::size_t>(im.height) * im.width;
  out.assign(n_real, 0.0);
  if (im.kernel_sum == 0.0) {
    return;
  }

  std::memcpy(im.real_buf, board.cells.data(), n_real * sizeof(double));
  fftw_execute(im.fwd);

  // Cross-correlation: multiply by the conjugated kernel spectrum.
  const std::size_t n_spec = static_cast<std::size_t>(im.height) * im.spec_width;
  for (std::size_t k = 0; k < n_spec; ++k) {
    const double ar = im.spec_buf[k][0];
    const double ai = im.spec_buf[k][1];
    const double kr = im.kernel_spec[k][0];
    const double ki = im.kernel_spec[k][1];
    im.spec_buf[k][0] = ar * kr + ai * ki;
    im.spec_buf[k][1] = ai * kr - ar * ki;
  }
  fftw_execute(im.inv);

  const double scale = 1.0 / (static_cast<double>(n_real) * im.kernel_sum);
  for (std::size_t k = 0; k < n_real; ++k) {
    out[k] = im.real_buf[k] * scale;
  }
}

std::vector<double> FftConvolver::convolve(const Board& board) {
  std::vector<double> out;
  convolve(board, out);
  return out;
}

std::vector<double> convolve(const Board& board, const ConvKernel& kernel) {
  check_kernel_fits(board, kernel);
  FftConvolver conv(board.height, board.width);
  conv.load_kernel(kernel);
  return conv.convolve(board);
}

}  // namespace lenia
