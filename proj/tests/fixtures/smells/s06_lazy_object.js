var o = {x: 1};
console.log(o.x);
