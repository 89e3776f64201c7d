#include "supercell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace supercell {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] and the embedded 7-point Gauss
// weights (Kronrod nodes at even positions).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval eval(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    kron += kWgk[i] * (i == 7 ? fv[7] : fv[i] + fv[14 - i]);
  }
  for (int i = 0; i < 4; ++i) {
    const int j = 2 * i + 1;  // Gauss nodes are the odd Kronrod nodes
    gauss += kWg[i] * (j == 7 ? fv[7] : fv[j] + fv[14 - j]);
  }
  const double value = kron * h;
  const double err = std::abs((kron - gauss) * h);
  return Interval{a, b, value, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_intervals) {
  if (a == b) return {0.0, 0.0, true};
  std::priority_queue<Interval> heap;
  heap.push(eval(f, a, b));
  double total = heap.top().value;
  double err = heap.top().error;
  int used = 1;
  while (used < max_intervals) {
    if (err <= abs_tol || err <= rel_tol * std::abs(total)) break;
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval at floating-point resolution
      heap.push(worst);
      break;
    }
    Interval left = eval(f, worst.a, mid);
    Interval right = eval(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++used;
  }
  // Recompute the totals from the heap to shed cancellation in the updates.
  total = 0.0;
  err = 0.0;
  std::vector<Interval> rest;
  rest.reserve(heap.size());
  while (!heap.empty()) {
    rest.push_back(heap.top());
    heap.pop();
  }
  for (const Interval& iv : rest) {
    total += iv.value;
    err += iv.error;
  }
  const bool ok = err <= abs_tol || err <= rel_tol * std::abs(total);
  return {total, err, ok};
}

}  // namespace supercell
