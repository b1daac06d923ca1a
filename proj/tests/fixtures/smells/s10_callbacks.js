f(x => g(y => h(z => k)));
