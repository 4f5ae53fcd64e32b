import init, { intervals, coverageCurve, simulate } from "./pkg/f1ci_web.js";

const COLORS = {
  "clopper-pearson": "#1f77b4",
  "wald": "#d62728",
  "wilson-direct": "#2ca02c",
  "wilson-indirect": "#9467bd",
};

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const fmt = (v, d = 4) => (v === null || v === undefined ? "-" : v.toFixed(d));

function table(headers, rows) {
  const head = headers.map((h) => `<th>${h}</th>`).join("");
  const body = rows.map((r) => `<tr>${r.map((c) => `<td>${c}</td>`).join("")}</tr>`).join("");
  return `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

function showError(el, e) {
  el.innerHTML = `<p class="err">${e.message ?? e}</p>`;
}

function clear(canvas) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.font = "12px system-ui, sans-serif";
  return ctx;
}

function drawIntervals(canvas, res) {
  const ctx = clear(canvas);
  const left = 130, right = canvas.width - 20, top = 20;
  const x = (v) => left + Math.min(Math.max(v, -0.1), 1.1) / 1.2 * (right - left) + (0.1 / 1.2) * (right - left);
  ctx.strokeStyle = "#bbb";
  for (const t of [0, 0.25, 0.5, 0.75, 1]) {
    ctx.beginPath();
    ctx.moveTo(x(t), top - 10);
    ctx.lineTo(x(t), canvas.height - 20);
    ctx.stroke();
    ctx.fillStyle = "#666";
    ctx.fillText(t.toFixed(2), x(t) - 12, canvas.height - 5);
  }
  res.intervals.forEach((iv, i) => {
    const y = top + 10 + i * 32;
    ctx.fillStyle = "#222";
    ctx.fillText(iv.method, 5, y + 4);
    if (iv.error) return;
    ctx.strokeStyle = COLORS[iv.method];
    ctx.lineWidth = 4;
    ctx.beginPath();
    ctx.moveTo(x(iv.lower), y);
    ctx.lineTo(Math.max(x(iv.upper), x(iv.lower) + 1), y);
    ctx.stroke();
    ctx.lineWidth = 1;
  });
  ctx.strokeStyle = "#000";
  ctx.beginPath();
  ctx.moveTo(x(res.f1_hat), top - 10);
  ctx.lineTo(x(res.f1_hat), canvas.height - 20);
  ctx.stroke();
}

function updateIntervals() {
  const out = $("ci-out");
  try {
    const res = JSON.parse(intervals(num("tp"), num("fp"), num("fn"), num("ci-alpha")));
    const rows = res.intervals.map((iv) =>
      iv.error
        ? [iv.method, "-", "-", "-", `<span class="err">${iv.error}</span>`]
        : [iv.method, fmt(iv.lower), fmt(iv.upper), fmt(iv.length),
           [iv.overshoot && "overshoot", iv.degenerate && "degenerate"].filter(Boolean).join(", ")]);
    out.innerHTML = `<p>nu = ${res.nu}, sample F1 = ${fmt(res.f1_hat)}</p>` +
      table(["method", "lower", "upper", "length", "notes"], rows);
    drawIntervals($("ci-plot"), res);
  } catch (e) {
    showError(out, e);
    clear($("ci-plot"));
  }
}

function updateCoverage() {
  const out = $("cov-out");
  const canvas = $("cov-plot");
  const alpha = num("cov-alpha");
  const curves = [];
  const notes = [];
  for (const m of Object.keys(COLORS)) {
    try {
      curves.push(JSON.parse(coverageCurve(num("cov-nu"), m, alpha, num("cov-grid"))));
    } catch (e) {
      notes.push(`${m}: ${e.message ?? e}`);
    }
  }
  out.innerHTML = notes.map((n) => `<p class="err">${n}</p>`).join("");

  const ctx = clear(canvas);
  const left = 50, right = canvas.width - 150, top = 15, bottom = canvas.height - 30;
  const lo = Math.max(0, Math.min(0.7, 1 - 4 * alpha));
  const x = (v) => left + v * (right - left);
  const y = (v) => bottom - (Math.max(v, lo) - lo) / (1 - lo) * (bottom - top);
  ctx.strokeStyle = "#bbb";
  ctx.strokeRect(left, top, right - left, bottom - top);
  ctx.fillStyle = "#666";
  for (let t = 0; t <= 4; t++) {
    const v = lo + (t / 4) * (1 - lo);
    ctx.fillText(v.toFixed(3), 5, y(v) + 4);
    ctx.fillText((t / 4).toFixed(2), x(t / 4) - 12, bottom + 15);
  }
  ctx.fillText("F1", right - 10, bottom + 28);
  ctx.setLineDash([4, 4]);
  ctx.strokeStyle = "#000";
  ctx.beginPath();
  ctx.moveTo(left, y(1 - alpha));
  ctx.lineTo(right, y(1 - alpha));
  ctx.stroke();
  ctx.setLineDash([]);
  curves.forEach((c, i) => {
    ctx.strokeStyle = COLORS[c.method];
    ctx.beginPath();
    c.points.forEach((p, j) => (j ? ctx.lineTo : ctx.moveTo).call(ctx, x(p.f1), y(p.coverage)));
    ctx.stroke();
    ctx.fillStyle = COLORS[c.method];
    ctx.fillText(c.method, right + 10, top + 15 + i * 18);
  });
}

function runSimulation(ev) {
  ev?.preventDefault();
  const out = $("sim-out");
  try {
    const t0 = performance.now();
    const res = JSON.parse(simulate(num("p11"), num("p10"), num("p01"), num("p00"),
      num("sim-n"), num("sim-reps"), num("sim-seed"), num("sim-alpha")));
    const ms = performance.now() - t0;
    const rows = res.methods.map((m) => [m.method, fmt(m.coverage), fmt(m.coverage_se),
      fmt(m.expected_length), fmt(m.overshoot_prob), fmt(m.degeneracy_prob), m.evaluated]);
    out.innerHTML = `<p>true F1 = ${fmt(res.true_f1)}; replicates with no relevant observations: ` +
      `${res.skipped_nu_zero}; ${ms.toFixed(0)} ms</p>` +
      table(["method", "coverage", "s.e.", "mean length", "overshoot", "degenerate", "evaluated"], rows);
  } catch (e) {
    showError(out, e);
  }
}

await init();
for (const id of ["tp", "fp", "fn", "ci-alpha"]) $(id).addEventListener("input", updateIntervals);
for (const id of ["cov-nu", "cov-alpha", "cov-grid"]) $(id).addEventListener("input", updateCoverage);
$("sim-form").addEventListener("submit", runSimulation);
updateIntervals();
updateCoverage();
runSimulation();
