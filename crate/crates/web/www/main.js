import init, { layerFunction, minSupportSearch, boundCurve } from "./pkg/hamming_eigen_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function color(v, scale) {
  if (v === 0 || scale === 0) return "#fff";
  const t = Math.min(1, Math.abs(v) / scale);
  const fade = Math.round(255 * (1 - t));
  return v > 0 ? `rgb(255,${fade},${fade})` : `rgb(${fade},${fade},255)`;
}

function drawHeatmap(canvas, heatmap, withLabels) {
  const ctx = canvas.getContext("2d");
  const q = heatmap.q;
  const size = canvas.width / q;
  const scale = Math.max(...heatmap.cells.flat().map(Math.abs));
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.font = `${Math.max(9, size / 4)}px system-ui`;
  heatmap.cells.forEach((row, y) =>
    row.forEach((v, x) => {
      ctx.fillStyle = color(v, scale);
      ctx.fillRect(x * size, y * size, size, size);
      ctx.strokeStyle = "#ccc";
      ctx.strokeRect(x * size, y * size, size, size);
      if (withLabels) {
        ctx.fillStyle = "#222";
        ctx.fillText(heatmap.labels[y][x], (x + 0.5) * size, (y + 0.5) * size);
      }
    }),
  );
}

function showError(el, err) {
  el.textContent = String(err);
  el.classList.add("error");
}

function updateLayer() {
  const info = $("layer-info");
  info.classList.remove("error");
  try {
    const view = JSON.parse(
      layerFunction($("kind").value, num("lq"), num("li"), num("lk"), num("lj"), num("lm"), $("lc").value),
    );
    drawHeatmap($("layer-canvas"), view.heatmap, true);
    const lambda = view.eigen_index === null ? "none" : `λ_${view.eigen_index} = ${view.spectrum[view.eigen_index]}`;
    info.textContent = [
      `support           ${view.support}`,
      `2(q−1)q^(n−2)     ${view.minimum_support}`,
      `spectrum          ${view.spectrum.join(" ")}`,
      `eigenvalue        ${lambda}`,
      `additive          ${view.additive}`,
      `canonical form    ${view.form ? JSON.stringify(view.form) : "—"}`,
    ].join("\n");
  } catch (err) {
    showError(info, err);
  }
}

function runSearch() {
  const info = $("search-info");
  const gallery = $("gallery");
  info.classList.remove("error");
  gallery.replaceChildren();
  info.textContent = "searching…";
  setTimeout(() => {
    try {
      const s = JSON.parse(minSupportSearch(num("sn"), num("sq"), num("slo"), num("shi")));
      info.textContent = [
        `grid points       ${s.enumerated}`,
        `observed minimum  ${s.observed_min}`,
        `2(q−1)q^(n−2)     ${s.theoretical_min}`,
        `lower bound       ${s.lower_bound}`,
        `achievers         ${s.achievers.length}`,
        `all dual layer    ${s.verdict}`,
      ].join("\n");
      for (const a of s.achievers) {
        const fig = document.createElement("figure");
        if (a.heatmap) {
          const canvas = document.createElement("canvas");
          canvas.width = canvas.height = 90;
          drawHeatmap(canvas, a.heatmap, false);
          fig.append(canvas);
        }
        const cap = document.createElement("figcaption");
        cap.textContent = `[${a.coefficients.join(",")}]`;
        fig.append(cap);
        gallery.append(fig);
      }
    } catch (err) {
      showError(info, err);
    }
  }, 0);
}

function updateBound() {
  const info = $("bound-info");
  const svg = $("bound-chart");
  info.classList.remove("error");
  svg.replaceChildren();
  try {
    const curve = JSON.parse(boundCurve(num("bn"), num("bq")));
    const pts = curve.points.filter((p) => p.bound !== null);
    const w = svg.width.baseVal.value, h = svg.height.baseVal.value, pad = 40;
    const top = Math.log10(Math.max(curve.vertex_count, 2));
    const x = (m) => pad + (m / Math.max(curve.n, 1)) * (w - 2 * pad);
    const y = (v) => h - pad - (Math.log10(Math.max(v, 1)) / top) * (h - 2 * pad);
    const ns = "http://www.w3.org/2000/svg";
    const add = (tag, attrs, text) => {
      const el = document.createElementNS(ns, tag);
      for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
      if (text !== undefined) el.textContent = text;
      svg.append(el);
    };
    add("line", { x1: pad, y1: h - pad, x2: w - pad, y2: h - pad, stroke: "#999" });
    add("line", { x1: pad, y1: pad, x2: pad, y2: h - pad, stroke: "#999" });
    add("text", { x: pad, y: pad - 8, "font-size": 11 }, `log scale, top = q^n = ${curve.vertex_count}`);
    add("polyline", {
      points: pts.map((p) => `${x(p.m)},${y(p.bound)}`).join(" "),
      fill: "none",
      stroke: "#36c",
    });
    for (const p of pts) {
      add("circle", { cx: x(p.m), cy: y(p.bound), r: 4, fill: p.branch === "power" ? "#c63" : "#36c" });
      add("text", { x: x(p.m), y: h - pad + 16, "text-anchor": "middle", "font-size": 11 }, `m=${p.m}`);
    }
    if (curve.lambda1_minimum !== null) {
      add("rect", { x: x(1) - 5, y: y(curve.lambda1_minimum) - 5, width: 10, height: 10, fill: "none", stroke: "#090" });
    }
    info.textContent = curve.points
      .map((p) => `m=${p.m}  λ=${p.eigenvalue}  bound ${p.label}${p.branch ? ` (${p.branch})` : ""}`)
      .concat(curve.lambda1_minimum !== null ? [`exact λ₁ minimum (green square): ${curve.lambda1_minimum}`] : [])
      .join("\n");
  } catch (err) {
    showError(info, err);
  }
}

await init();
for (const id of ["kind", "lq", "li", "lk", "lj", "lm", "lc"]) $(id).addEventListener("input", updateLayer);
for (const id of ["bn", "bq"]) $(id).addEventListener("input", updateBound);
$("run-search").addEventListener("click", runSearch);
updateLayer();
updateBound();
runSearch();
