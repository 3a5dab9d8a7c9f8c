#include <algorithm>
#include <sstream>

#include "qfm/decomposer.hpp"

namespace qfm {

namespace {

constexpr int kColumnWidth = 4;

int column(int twist) { return kColumnWidth * twist + 2; }

// A drawn summand: its twists, the bar character and whether it sits below
// the dot rows (it uses the lower copy of the middle dot).
struct Stroke {
  std::vector<int> twists;  // sorted, distinct
  char fill;
  bool below;
};

// Lanes are first-fit by span, widest outermost.
std::vector<std::vector<const Stroke*>> assign_lanes(std::vector<const Stroke*> strokes) {
  std::stable_sort(strokes.begin(), strokes.end(), [](const Stroke* a, const Stroke* b) {
    return a->twists.back() - a->twists.front() > b->twists.back() - b->twists.front();
  });
  std::vector<std::vector<const Stroke*>> lanes;
  for (const Stroke* s : strokes) {
    auto fits = [&](const std::vector<const Stroke*>& lane) {
      return std::none_of(lane.begin(), lane.end(), [&](const Stroke* o) {
        return s->twists.front() <= o->twists.back() && o->twists.front() <= s->twists.back();
      });
    };
    auto it = std::find_if(lanes.begin(), lanes.end(), fits);
    if (it == lanes.end()) {
      lanes.push_back({s});
    } else {
      it->push_back(s);
    }
  }
  return lanes;
}

void put_leg(std::string& cell) { cell = (cell == "-" || cell == "=") ? "+" : (cell == " " ? "|" : cell); }

}  // namespace

std::string vishik_diagram(const Decomposition& d) {
  const int top = d.dim - 2;
  std::ostringstream out;
  if (top < 0) return "(empty)\n";
  const bool even = d.dim % 2 == 0;
  const int middle = even ? top / 2 : -1;
  const int width = column(top) + 3;

  std::vector<Stroke> strokes;
  bool middle_link = false;  // the two middle dots belong to one summand
  int middle_uses = 0;
  std::vector<std::string> upper_names;
  for (const MotiveSummand& s : d.summands) {
    if (std::holds_alternative<Tate>(s)) {
      if (lowest_twist(s) == middle) ++middle_uses;
      continue;
    }
    std::vector<int> g = geometric(s);
    const int copies = static_cast<int>(std::count(g.begin(), g.end(), middle));
    if (copies == 2) middle_link = true;
    const bool below = copies == 1 && middle_uses >= 1;
    middle_uses += copies;
    g.erase(std::unique(g.begin(), g.end()), g.end());
    const bool upper = std::holds_alternative<UpperMotive>(s);
    if (upper) upper_names.push_back(describe(s));
    if (g.size() > 1) strokes.push_back({g, upper ? '=' : '-', below});
  }

  std::vector<const Stroke*> above_strokes, below_strokes;
  for (const Stroke& s : strokes) (s.below ? below_strokes : above_strokes).push_back(&s);
  const auto above = assign_lanes(above_strokes);
  const auto below = assign_lanes(below_strokes);

  // Grid rows: above lanes (outermost first), dots, [link, lower dots, below lanes].
  const int dot_row = static_cast<int>(above.size());
  const int lower_row = dot_row + 2;
  const int rows = even ? lower_row + 1 + static_cast<int>(below.size()) : dot_row + 1;
  std::vector<std::vector<std::string>> grid(rows, std::vector<std::string>(width, " "));
  for (int t = 0; t <= top; ++t) grid[dot_row][column(t)] = "o";
  if (even) {
    grid[lower_row][column(middle)] = "o";
    if (middle_link) grid[dot_row + 1][column(middle)] = "|";
  }

  auto draw = [&](const Stroke& s, int row, int toward_row) {
    const int x0 = column(s.twists.front()), x1 = column(s.twists.back());
    for (int x = x0; x <= x1; ++x) grid[row][x] = grid[row][x] == "|" ? "+" : std::string(1, s.fill);
    for (int t : s.twists) {
      const int x = column(t);
      grid[row][x] = (t == s.twists.front() || t == s.twists.back()) ? "." : "+";
      const int step = toward_row > row ? 1 : -1;
      for (int r = row + step; r != toward_row; r += step) put_leg(grid[r][x]);
    }
  };
  for (std::size_t lane = 0; lane < above.size(); ++lane)
    for (const Stroke* s : above[lane]) draw(*s, static_cast<int>(lane), dot_row);
  for (std::size_t lane = 0; lane < below.size(); ++lane)
    for (const Stroke* s : below[lane]) {
      const int row = rows - 1 - static_cast<int>(lane);
      // Legs off the middle column reach up to the main dot row.
      draw(*s, row, lower_row);
      for (int t : s->twists)
        if (t != middle)
          for (int r = lower_row; r > dot_row; --r) put_leg(grid[r][column(t)]);
    }

  for (const auto& row : grid) {
    std::string line;
    for (const auto& cell : row) line += cell;
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
  std::string axis;
  for (int t = 0; t <= top; ++t) {
    std::string label = std::to_string(t);
    axis.resize(static_cast<std::size_t>(column(t)), ' ');
    axis += label;
  }
  out << axis << '\n';
  out << "M = " << d.describe() << '\n';
  out << "S = ";
  if (upper_names.empty()) {
    out << "0";
  } else {
    for (std::size_t i = 0; i < upper_names.size(); ++i) out << (i ? " + " : "") << upper_names[i];
  }
  out << '\n';
  return out.str();
}

}  // namespace qfm
