#include <array>
#include <cstdint>

#include "glkit/prover.hpp"

namespace glkit {

namespace {

// Valuations are processed in blocks of 2^kBlockBits; inside a block, bit k of
// word i stands for valuation (block_start + 64 * i + k).
constexpr std::size_t kBlockBits = 12;
constexpr std::size_t kMaxValuationBits = 40;

struct Program {
  struct Op {
    ModalKind kind;
    int a = -1;
    int b = -1;
    int var = -1;
  };
  std::vector<Op> ops;  // operands before users; result last
  std::vector<std::string> vars;
};

int compile(const Formula& f, Program& p) {
  Program::Op op{f.kind()};
  if (f.kind() == ModalKind::Var) {
    auto it = std::lower_bound(p.vars.begin(), p.vars.end(), f.name());
    op.var = static_cast<int>(it - p.vars.begin());
  }
  if (f.is_unary() || f.is_binary()) op.a = compile(f.lhs(), p);
  if (f.is_binary()) op.b = compile(f.rhs(), p);
  p.ops.push_back(op);
  return static_cast<int>(p.ops.size()) - 1;
}

using Word = std::uint64_t;

constexpr std::array<Word, 6> kLowPatterns = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Pattern word for valuation bit `pos` inside a block.
Word pattern_word(std::size_t pos, std::size_t word) {
  if (pos < 6) return kLowPatterns[pos];
  return ((word >> (pos - 6)) & 1U) ? ~Word{0} : 0;
}

}  // namespace

ModelOracle::ModelOracle(std::size_t max_worlds)
    : max_worlds_(max_worlds), frames_(enumerate_frames(max_worlds)) {
  if (max_worlds == 0) throw std::invalid_argument("max_worlds must be at least 1");
}

std::optional<ModelOracle::Hit> ModelOracle::find(const Formula& f) const {
  Program prog;
  prog.vars = variables(f);
  compile(f, prog);
  const std::size_t nodes = prog.ops.size();
  const std::size_t nvars = prog.vars.size();

  std::vector<Word> values;
  for (std::size_t fi = 0; fi < frames_.size(); ++fi) {
    const TreeFrame& frame = frames_[fi];
    const std::size_t n = frame.size();
    const std::size_t total_bits = nvars * n;
    if (total_bits > kMaxValuationBits) throw ModelError("oracle search space too large");
    const std::size_t block_bits = std::min(total_bits, kBlockBits);
    const std::size_t block_size = std::size_t{1} << block_bits;
    const std::size_t words = (block_size + 63) / 64;
    const Word tail_mask = block_size >= 64 ? ~Word{0} : ((Word{1} << block_size) - 1);
    const std::uint64_t blocks = std::uint64_t{1} << (total_bits - block_bits);
    const World root = frame.root();

    values.resize(nodes * n * words);
    Word* base = values.data();
    auto at = [&](std::size_t node, World w) { return base + (node * n + w) * words; };

    for (std::uint64_t high = 0; high < blocks; ++high) {
      for (std::size_t id = 0; id < nodes; ++id) {
        const Program::Op& op = prog.ops[id];
        for (World w = 0; w < n; ++w) {
          Word* __restrict out = at(id, w);
          switch (op.kind) {
            case ModalKind::Top:
              std::fill(out, out + words, ~Word{0});
              break;
            case ModalKind::Bot:
              std::fill(out, out + words, Word{0});
              break;
            case ModalKind::Var: {
              const std::size_t pos = static_cast<std::size_t>(op.var) * n + w;
              if (pos < block_bits) {
                for (std::size_t i = 0; i < words; ++i) out[i] = pattern_word(pos, i);
              } else {
                const bool on = (high >> (pos - block_bits)) & 1U;
                std::fill(out, out + words, on ? ~Word{0} : Word{0});
              }
              break;
            }
            case ModalKind::Not: {
              const Word* x = at(op.a, w);
              for (std::size_t i = 0; i < words; ++i) out[i] = ~x[i];
              break;
            }
            case ModalKind::And: {
              const Word* x = at(op.a, w);
              const Word* y = at(op.b, w);
              for (std::size_t i = 0; i < words; ++i) out[i] = x[i] & y[i];
              break;
            }
            case ModalKind::Or: {
              const Word* x = at(op.a, w);
              const Word* y = at(op.b, w);
              for (std::size_t i = 0; i < words; ++i) out[i] = x[i] | y[i];
              break;
            }
            case ModalKind::Imp: {
              const Word* x = at(op.a, w);
              const Word* y = at(op.b, w);
              for (std::size_t i = 0; i < words; ++i) out[i] = ~x[i] | y[i];
              break;
            }
            case ModalKind::Box: {
              std::fill(out, out + words, ~Word{0});
              for (World d : frame.descendants(w)) {
                const Word* x = at(op.a, d);
                for (std::size_t i = 0; i < words; ++i) out[i] &= x[i];
              }
              break;
            }
            case ModalKind::Dia: {
              std::fill(out, out + words, Word{0});
              for (World d : frame.descendants(w)) {
                const Word* x = at(op.a, d);
                for (std::size_t i = 0; i < words; ++i) out[i] |= x[i];
              }
              break;
            }
          }
        }
      }
      const Word* result = at(nodes - 1, root);
      for (std::size_t i = 0; i < words; ++i) {
        const Word mask = i + 1 == words ? tail_mask : ~Word{0};
        const Word refuting = ~result[i] & mask;
        if (refuting != 0) {
          const std::uint64_t index =
              (high << block_bits) | (i * 64 + static_cast<std::uint64_t>(__builtin_ctzll(refuting)));
          return Hit{fi, index};
        }
      }
    }
  }
  return std::nullopt;
}

OracleResult ModelOracle::decide(const Formula& f) const {
  if (auto hit = find(f)) return RefutedBy{model_from_index(frames_[hit->frame], variables(f), hit->valuation)};
  return NoCountermodelUpTo{max_worlds_};
}

OracleResult oracle_decide(const Formula& f, std::size_t max_worlds) {
  return ModelOracle(max_worlds).decide(f);
}

}  // namespace glkit
