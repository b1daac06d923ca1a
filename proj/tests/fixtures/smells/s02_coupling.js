function showScore(el) {
  el.innerHTML = "<div><b>x</b></div>";
}
showScore(document.body);
