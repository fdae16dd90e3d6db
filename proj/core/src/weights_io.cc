#include "vsrcost/weights_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <string>
#include <utility>

#include "file_util.h"
#include "vsrcost/errors.h"

namespace vsrcost {

namespace {

constexpr std::uint8_t kDtypeFp32 = 0;
constexpr std::uint8_t kDtypeInt8 = 1;
constexpr std::uint8_t kMaxRank = 8;

template <class T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    auto bytes = std::bit_cast<std::array<std::uint8_t, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
}

class Writer {
 public:
  template <class T>
  void put(T value) {
    const T le = to_little_endian(value);
    const auto* p = reinterpret_cast<const std::uint8_t*>(&le);
    out_.insert(out_.end(), p, p + sizeof(T));
  }
  void put_string16(std::string_view s) {
    if (s.size() > 0xFFFF) throw ValidationError("weights: string too long: " + std::string(s));
    put(static_cast<std::uint16_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void put_bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <class T>
  T get(const char* what) {
    need(sizeof(T), what);
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return to_little_endian(value);
  }

  std::string get_string16(const char* what) {
    const auto n = get<std::uint16_t>(what);
    need(n, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    need(n, what);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] static void fail_at(std::size_t offset, const std::string& message) {
    throw SchemaError("byte " + std::to_string(offset), message);
  }

 private:
  void need(std::size_t n, const char* what) const {
    if (n > remaining()) {
      fail("truncated file: need " + std::to_string(n) + " bytes for " + what + ", " +
           std::to_string(remaining()) + " left");
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t entry_bytes(const WeightEntry& e) {
  const auto n = static_cast<std::uint64_t>(e.element_count());
  return e.quantized() ? n + sizeof(float) + sizeof(std::int32_t) : n * sizeof(float);
}

struct ManifestEntry {
  std::size_t at;
  std::string layer_id;
  std::string role;
  std::uint8_t dtype;
  Shape shape;
  std::uint64_t offset;
  std::uint64_t length;
};

}  // namespace

std::uint64_t payload_bytes(const WeightStore& weights) {
  std::uint64_t total = 0;
  for (const auto& e : weights.entries()) total += entry_bytes(e);
  return total;
}

std::vector<std::uint8_t> serialize_weights(const WeightStore& weights) {
  Writer w;
  w.put_bytes(kWeightsMagic);
  w.put(static_cast<std::uint32_t>(weights.entries().size()));
  std::uint64_t offset = 0;
  for (const auto& e : weights.entries()) {
    w.put_string16(e.layer_id);
    w.put_string16(e.role);
    w.put(e.quantized() ? kDtypeInt8 : kDtypeFp32);
    const Shape& shape = e.shape();
    w.put(static_cast<std::uint8_t>(shape.size()));
    for (auto d : shape) w.put(static_cast<std::uint32_t>(d));
    const auto len = entry_bytes(e);
    w.put(offset);
    w.put(len);
    offset += len;
  }
  w.put(offset);
  for (const auto& e : weights.entries()) {
    if (const auto* q = std::get_if<QuantizedTensor>(&e.value)) {
      w.put(q->params().scale);
      w.put(q->params().zero_point);
      for (auto v : q->values()) w.put(v);
    } else {
      for (auto v : std::get<Tensor>(e.value).data()) w.put(v);
    }
  }
  return w.take();
}

WeightStore parse_weights(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const auto magic = r.take(kWeightsMagic.size(), "magic");
  if (!std::equal(magic.begin(), magic.end(), kWeightsMagic.begin())) {
    Reader::fail_at(0, "bad magic; not a weights file");
  }
  const auto count = r.get<std::uint32_t>("tensor count");

  std::vector<ManifestEntry> manifest;
  for (std::uint32_t i = 0; i < count; ++i) {
    ManifestEntry m;
    m.at = r.pos();
    m.layer_id = r.get_string16("layer id");
    m.role = r.get_string16("role");
    m.dtype = r.get<std::uint8_t>("dtype");
    if (m.dtype != kDtypeFp32 && m.dtype != kDtypeInt8) {
      r.fail("unknown dtype code " + std::to_string(m.dtype) + " for '" + m.layer_id + "'");
    }
    const auto rank = r.get<std::uint8_t>("rank");
    if (rank == 0 || rank > kMaxRank) r.fail("invalid rank " + std::to_string(rank));
    for (std::uint8_t d = 0; d < rank; ++d) {
      const auto extent = r.get<std::uint32_t>("extent");
      if (extent == 0) r.fail("zero extent in tensor '" + m.layer_id + "/" + m.role + "'");
      m.shape.push_back(extent);
    }
    m.offset = r.get<std::uint64_t>("offset");
    m.length = r.get<std::uint64_t>("length");
    const auto n = static_cast<std::uint64_t>(volume(m.shape));
    const auto expected = m.dtype == kDtypeInt8 ? n + 8 : n * 4;
    if (m.length != expected) {
      Reader::fail_at(m.at, "tensor '" + m.layer_id + "/" + m.role + "' declares " +
                                std::to_string(m.length) + " bytes, shape implies " +
                                std::to_string(expected));
    }
    manifest.push_back(std::move(m));
  }

  const auto payload_len = r.get<std::uint64_t>("payload length");
  const std::size_t payload_start = r.pos();
  if (payload_len != r.remaining()) {
    r.fail("payload length " + std::to_string(payload_len) + " does not match the " +
           std::to_string(r.remaining()) + " bytes present");
  }
  const auto payload = bytes.subspan(payload_start);

  std::vector<const ManifestEntry*> by_offset;
  for (const auto& m : manifest) {
    if (m.offset > payload_len || m.length > payload_len - m.offset) {
      Reader::fail_at(m.at, "tensor '" + m.layer_id + "/" + m.role + "' lies outside the payload");
    }
    by_offset.push_back(&m);
  }
  std::sort(by_offset.begin(), by_offset.end(),
            [](auto* a, auto* b) { return a->offset < b->offset; });
  for (std::size_t i = 1; i < by_offset.size(); ++i) {
    const auto* prev = by_offset[i - 1];
    if (prev->offset + prev->length > by_offset[i]->offset) {
      Reader::fail_at(by_offset[i]->at, "tensor '" + by_offset[i]->layer_id + "/" +
                                            by_offset[i]->role + "' overlaps '" + prev->layer_id +
                                            "/" + prev->role + "'");
    }
  }

  WeightStore store;
  for (const auto& m : manifest) {
    if (store.find(m.layer_id, m.role)) {
      Reader::fail_at(m.at, "duplicate tensor '" + m.layer_id + "/" + m.role + "'");
    }
    Reader t(payload.subspan(m.offset, m.length));
    const auto n = static_cast<std::size_t>(volume(m.shape));
    if (m.dtype == kDtypeFp32) {
      std::vector<float> data(n);
      for (auto& v : data) v = t.get<float>("fp32 value");
      store.put(m.layer_id, m.role, Tensor(m.shape, std::move(data)));
    } else {
      QuantParams params;
      params.scale = t.get<float>("scale");
      params.zero_point = t.get<std::int32_t>("zero point");
      if (!(params.scale > 0.0f)) {
        Reader::fail_at(payload_start + m.offset,
                        "non-positive scale for '" + m.layer_id + "/" + m.role + "'");
      }
      std::vector<std::int8_t> values(n);
      for (auto& v : values) v = t.get<std::int8_t>("int8 value");
      store.put(m.layer_id, m.role, QuantizedTensor(m.shape, std::move(values), params));
    }
  }
  return store;
}

void save_weights(const WeightStore& weights, const std::filesystem::path& path) {
  detail::write_file(path, serialize_weights(weights));
}

WeightStore load_weights(const std::filesystem::path& path) {
  return parse_weights(detail::read_file(path));
}

}  // namespace vsrcost
