#include "lmop/multi_index.hpp"

namespace lmop {

namespace {
void extend(std::vector<MultiIndex>& out, std::vector<int>& parts, int pos, int r,
            int remaining) {
  if (pos == r) {
    out.push_back(MultiIndex(parts));
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    parts[pos] = v;
    extend(out, parts, pos + 1, r, remaining - v);
  }
  parts[pos] = 0;
}
}  // namespace

std::vector<MultiIndex> indices_up_to(int r, int max_total) {
  std::vector<MultiIndex> out;
  std::vector<int> parts(r, 0);
  extend(out, parts, 0, r, max_total);
  return out;
}

}  // namespace lmop
