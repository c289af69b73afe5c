import init, { squeezing_curves, number_distribution, squeezing_at } from "../pkg/spinsq_web.js";

const $ = (id) => document.getElementById(id);
const COLORS = ["#d62728", "#1f77b4", "#2ca02c"];

function state() {
  return {
    twoJ: parseInt($("two-j").value, 10),
    re: parseFloat($("eta-re").value),
    im: parseFloat($("eta-im").value),
    f: $("f").value,
  };
}

function guarded(fn) {
  return () => {
    $("error").textContent = "";
    try {
      fn();
    } catch (e) {
      $("error").textContent = e.message ?? String(e);
    }
  };
}

function axes(ctx, w, h) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(40, 10, w - 50, h - 30);
}

function plotCurves() {
  const s = state();
  const tMax = parseFloat($("t-max").value);
  const steps = parseInt($("steps").value, 10);
  const data = squeezing_curves(s.twoJ, s.re, s.im, s.f, tMax, steps);
  const rows = data.length / 4;

  const canvas = $("curves");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  axes(ctx, w, h);

  let lo = 0, hi = 0;
  for (let i = 0; i < data.length; i++) {
    if (i % 4 === 0 || !(data[i] > 0)) continue;
    const v = Math.log10(data[i]);
    lo = Math.min(lo, v);
    hi = Math.max(hi, v);
  }
  if (hi - lo < 1e-9) { lo -= 1; hi += 1; }
  const tMin = data[0], tSpan = (data[(rows - 1) * 4] - tMin) || 1;
  const px = (t) => 40 + ((t - tMin) / tSpan) * (w - 50);
  const py = (v) => 10 + (1 - (Math.log10(v) - lo) / (hi - lo)) * (h - 30);

  ctx.setLineDash([4, 4]);
  ctx.strokeStyle = "#444";
  ctx.beginPath();
  ctx.moveTo(40, py(1));
  ctx.lineTo(w - 10, py(1));
  ctx.stroke();
  ctx.setLineDash([]);

  for (let axis = 0; axis < 3; axis++) {
    ctx.strokeStyle = COLORS[axis];
    ctx.beginPath();
    let pen = false;
    for (let r = 0; r < rows; r++) {
      const v = data[r * 4 + 1 + axis];
      if (!(v > 0)) { pen = false; continue; }
      const x = px(data[r * 4]), y = py(v);
      pen ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
      pen = true;
    }
    ctx.stroke();
  }

  ctx.fillStyle = "#000";
  ctx.fillText(`1e${hi.toFixed(1)}`, 2, 18);
  ctx.fillText(`1e${lo.toFixed(1)}`, 2, h - 22);
  ctx.fillText(`t = ${tMin}`, 40, h - 5);
  ctx.fillText(`t = ${data[(rows - 1) * 4]}`, w - 80, h - 5);
}

function plotDistribution() {
  const s = state();
  const p = number_distribution(s.twoJ, s.re, s.im);
  const canvas = $("dist");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  axes(ctx, w, h);
  const max = Math.max(...p) || 1;
  const bar = (w - 50) / p.length;
  ctx.fillStyle = "#1f77b4";
  p.forEach((v, n) => {
    const height = (v / max) * (h - 30);
    ctx.fillRect(40 + n * bar, h - 20 - height, Math.max(bar - 1, 1), height);
  });
  ctx.fillStyle = "#000";
  ctx.fillText(max.toPrecision(3), 2, 18);
  ctx.fillText("n = 0", 40, h - 5);
  ctx.fillText(`n = ${p.length - 1}`, w - 60, h - 5);
}

function computeDirection() {
  const s = state();
  const [xi2, variance, mx, my, mz] = squeezing_at(
    s.twoJ, s.re, s.im, s.f,
    parseFloat($("t").value),
    parseFloat($("nx").value), parseFloat($("ny").value), parseFloat($("nz").value),
  );
  const fmt = (v) => (Number.isNaN(v) ? "undef" : v.toPrecision(10));
  $("dir-out").textContent =
    `xi^2      = ${fmt(xi2)}\n` +
    `variance  = ${fmt(variance)}\n` +
    `<J>       = (${fmt(mx)}, ${fmt(my)}, ${fmt(mz)})`;
}

await init();
$("run-curves").addEventListener("click", guarded(plotCurves));
$("run-dist").addEventListener("click", guarded(plotDistribution));
$("run-dir").addEventListener("click", guarded(computeDirection));
guarded(plotCurves)();
guarded(plotDistribution)();
