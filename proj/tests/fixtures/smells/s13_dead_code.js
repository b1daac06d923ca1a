function step(x) {
  return x + 1;
  x++;
}
step(1);
