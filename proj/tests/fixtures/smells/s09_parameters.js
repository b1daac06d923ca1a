function f(a, b, c, d, e) {
  return a + b + c + d + e;
}
f(1, 2, 3, 4, 5);
