#include "bardina/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "bardina/operators.hpp"

namespace bardina {

namespace {

constexpr char kMagic[4] = {'B', 'A', 'R', 'D'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

void put_f64(std::string& buf, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  std::uint64_t raw(int bytes) {
    if (pos_ + static_cast<std::size_t>(bytes) > data_.size()) throw std::runtime_error("checkpoint is truncated");
    std::uint64_t v = 0;
    for (int b = 0; b < bytes; ++b) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + static_cast<std::size_t>(b)])) << (8 * b);
    }
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  double f64() { return std::bit_cast<double>(raw(8)); }
  bool at_end() const { return pos_ == data_.size(); }
  const std::string& data() const { return data_; }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const VectorField& u, const PhysParams& params, double time) {
  const GridSpec& g = u.grid();
  const int n = g.n;
  std::string buf(kMagic, 4);
  buf.reserve(44 + 3 * g.size() * 16);
  put_u32(buf, kVersion);
  put_u32(buf, static_cast<std::uint32_t>(n));
  put_f64(buf, g.box_len);
  put_f64(buf, params.alpha);
  put_f64(buf, params.beta);
  put_f64(buf, params.nu);
  put_f64(buf, time);
  for (int c = 0; c < 3; ++c)
    for (int mx = -n / 2; mx < n / 2; ++mx)
      for (int my = -n / 2; my < n / 2; ++my)
        for (int mz = -n / 2; mz < n / 2; ++mz) {
          const Complex z = u[c].at_mode(mx, my, mz);
          put_f64(buf, z.real());
          put_f64(buf, z.imag());
        }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < 4 || std::memcmp(data.data(), kMagic, 4) != 0) {
    throw std::runtime_error(path.string() + " is not a checkpoint (bad magic)");
  }
  Reader r(data.substr(4));
  const std::uint32_t version = r.u32();
  if (version != kVersion) throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  Checkpoint cp;
  cp.grid.n = static_cast<int>(r.u32());
  cp.grid.box_len = r.f64();
  cp.params.alpha = r.f64();
  cp.params.beta = r.f64();
  cp.params.nu = r.f64();
  cp.time = r.f64();
  cp.grid.validate();
  const int n = cp.grid.n;
  cp.u = VectorField(cp.grid);
  for (int c = 0; c < 3; ++c)
    for (int mx = -n / 2; mx < n / 2; ++mx)
      for (int my = -n / 2; my < n / 2; ++my)
        for (int mz = -n / 2; mz < n / 2; ++mz) {
          const double re = r.f64();
          const double im = r.f64();
          cp.u[c].at_mode(mx, my, mz) = Complex(re, im);
        }
  if (!r.at_end()) throw std::runtime_error("checkpoint has trailing bytes");
  certify_div_free(cp.u);
  return cp;
}

}  // namespace bardina
