import init, { explore_unimodular, psi_slice, flag_defect_curve } from "./pkg/lcwlab_demo.js";

const $ = (id) => document.getElementById(id);

function explore() {
  const out = $("explore-out");
  try {
    const report = JSON.parse(explore_unimodular($("l1").value, $("l2").value, $("l3").value));
    out.className = "";
    out.textContent = JSON.stringify(report, null, 2);
  } catch (e) {
    out.className = "err";
    out.textContent = String(e.message ?? e);
  }
}

// diverging blue/red colormap, grey for singular points
function color(t) {
  if (Number.isNaN(t)) return [128, 128, 128];
  const u = Math.max(-1, Math.min(1, t));
  return u < 0 ? [255 * (1 + u), 255 * (1 + u), 255] : [255, 255 * (1 - u), 255 * (1 - u)];
}

function drawSlice() {
  const canvas = $("slice");
  const size = canvas.width;
  const height = Number($("height").value);
  $("height-val").textContent = height.toFixed(2);
  const vals = psi_slice(Number($("family").value), size, 2.0, height);
  const finite = vals.filter(Number.isFinite).map(Math.abs).sort((a, b) => a - b);
  // clip at the 95th percentile so log and 1/|x| poles don't flatten the picture
  const scale = finite.length ? finite[Math.floor(0.95 * (finite.length - 1))] || 1 : 1;
  const ctx = canvas.getContext("2d");
  const img = ctx.createImageData(size, size);
  vals.forEach((v, i) => {
    const [r, g, b] = color(v / scale);
    img.data.set([r, g, b, 255], 4 * i);
  });
  ctx.putImageData(img, 0, 0);
  const singular = vals.length - vals.filter(Number.isFinite).length;
  $("slice-info").textContent = `square [-2, 2]², colour scale ±${scale.toPrecision(3)}, ${singular} singular samples`;
}

function drawCurve() {
  const info = $("curve-info");
  const canvas = $("defect");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  let vals;
  try {
    vals = flag_defect_curve($("kind").value, Number($("fa").value), Number($("fb").value), canvas.width);
  } catch (e) {
    info.className = "err";
    info.textContent = String(e.message ?? e);
    return;
  }
  info.className = "";
  const max = Math.max(...vals) || 1;
  ctx.strokeStyle = "#036";
  ctx.beginPath();
  vals.forEach((v, i) => {
    const y = canvas.height - 4 - (canvas.height - 8) * (v / max);
    i === 0 ? ctx.moveTo(i, y) : ctx.lineTo(i, y);
  });
  ctx.stroke();
  const zeros = vals.map((v, i) => [v, i]).filter(([v]) => v < 1e-12 * max).map(([, i]) => (i / vals.length).toFixed(3) + "π");
  info.textContent = `max defect ${max.toPrecision(4)}; zeros at t = ${zeros.join(", ") || "none on this grid"}`;
}

await init();
$("explore").addEventListener("click", explore);
$("family").addEventListener("change", drawSlice);
$("height").addEventListener("input", drawSlice);
$("curve").addEventListener("click", drawCurve);
explore();
drawSlice();
drawCurve();
