#include "perco/pairs.hpp"

#include "core/errors.hpp"

namespace stodom::perco {

FixturePair cycle_cover_pair(int small_cycle, int pendant_len) {
  if (small_cycle < 3 || pendant_len < 0) throw InputError("bad cycle cover parameters");
  const int n = small_cycle;

  // Small: cycle 0..n-1 plus a pendant path hanging at vertex 0.
  std::vector<std::pair<int, int>> sedges;
  for (int i = 0; i < n; ++i) sedges.emplace_back(i, (i + 1) % n);
  for (int i = 0; i < pendant_len; ++i)
    sedges.emplace_back(i == 0 ? 0 : n + i - 1, n + i);
  Graph small(n + pendant_len, std::move(sedges));

  // Large: the 2n-cycle plus one pendant copy at each preimage of 0.
  std::vector<std::pair<int, int>> ledges;
  for (int i = 0; i < 2 * n; ++i) ledges.emplace_back(i, (i + 1) % (2 * n));
  int base0 = 2 * n;           // copy at vertex 0
  int base1 = 2 * n + pendant_len;  // copy at vertex n
  for (int i = 0; i < pendant_len; ++i) {
    ledges.emplace_back(i == 0 ? 0 : base0 + i - 1, base0 + i);
    ledges.emplace_back(i == 0 ? n : base1 + i - 1, base1 + i);
  }
  Graph large(2 * n + 2 * pendant_len, std::move(ledges));

  std::vector<int> map(static_cast<size_t>(large.vertex_count()));
  for (int i = 0; i < 2 * n; ++i) map[static_cast<size_t>(i)] = i % n;
  for (int i = 0; i < pendant_len; ++i) {
    map[static_cast<size_t>(base0 + i)] = n + i;
    map[static_cast<size_t>(base1 + i)] = n + i;
  }
  return {"cycle-cover", VertexMap(std::move(large), std::move(small), std::move(map)), 0};
}

FixturePair two_floor_pair(int w, int h) {
  Graph small = Graph::grid2(w, h);
  Graph floor = Graph::grid2(w, h);
  std::vector<std::pair<int, int>> ledges;
  int n = floor.vertex_count();
  for (const auto& [u, v] : floor.edges()) {
    ledges.emplace_back(u, v);
    ledges.emplace_back(u + n, v + n);
  }
  for (int u = 0; u < n; ++u) ledges.emplace_back(u, u + n);
  Graph large(2 * n, std::move(ledges));
  std::vector<int> map(static_cast<size_t>(2 * n));
  for (int u = 0; u < 2 * n; ++u) map[static_cast<size_t>(u)] = u % n;
  int probe = (h / 2) * w + w / 2;  // centre of floor 0
  return {"two-floor", VertexMap(std::move(large), std::move(small), std::move(map)), probe};
}

FixturePair box3d_pair(int w, int h, int d) {
  Graph large = Graph::grid3(w, h, d);
  Graph small = Graph::grid2(w, h);
  std::vector<int> map(static_cast<size_t>(large.vertex_count()));
  for (int z = 0; z < d; ++z)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        map[static_cast<size_t>((z * h + y) * w + x)] = y * w + x;
  int probe = ((d / 2) * h + h / 2) * w + w / 2;
  return {"box3d", VertexMap(std::move(large), std::move(small), std::move(map)), probe};
}

FixturePair torus_cover_pair(int w, int h) {
  Graph large = Graph::grid2(2 * w, h, true);
  Graph small = Graph::grid2(w, h, true);
  std::vector<int> map(static_cast<size_t>(large.vertex_count()));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < 2 * w; ++x)
      map[static_cast<size_t>(y * 2 * w + x)] = y * w + (x % w);
  return {"torus-cover", VertexMap(std::move(large), std::move(small), std::move(map)), 0};
}

FixturePair fixture_pair_by_name(const std::string& name) {
  if (name == "cycle-cover") return cycle_cover_pair(20, 4);
  if (name == "cycle-cover-small") return cycle_cover_pair(3, 2);
  if (name == "two-floor") return two_floor_pair(25, 25);
  if (name == "two-floor-small") return two_floor_pair(5, 5);
  if (name == "box3d") return box3d_pair(17, 17, 5);
  if (name == "box3d-small") return box3d_pair(5, 5, 3);
  if (name == "torus-cover") return torus_cover_pair(12, 12);
  throw InputError("unknown fixture pair: " + name);
}

}  // namespace stodom::perco
