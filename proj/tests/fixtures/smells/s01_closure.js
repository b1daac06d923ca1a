function level1() {
  return function level2() {
    return function level3() {
      return function level4() {
        return 42;
      };
    };
  };
}
level1();
