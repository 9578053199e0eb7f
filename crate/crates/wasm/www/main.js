import init, {
  sample_chart_names, sample_chart, transform_rgba, extract_palette_json, invert_rgba, contrast_ratio,
} from "./pkg/duskify_wasm.js";

const W = 480, H = 320;
const $ = (id) => document.getElementById(id);
let current = null; // { rgba: Uint8Array, width, height }

function status(msg, error = false) {
  $("status").textContent = msg;
  $("status").className = error ? "error" : "";
}

function draw(canvasId, rgba, width, height) {
  const c = $(canvasId);
  c.width = width;
  c.height = height;
  c.getContext("2d").putImageData(new ImageData(new Uint8ClampedArray(rgba), width, height), 0, 0);
}

function show(image) {
  current = image;
  draw("light", image.rgba, image.width, image.height);
  draw("inverted", invert_rgba(image.rgba, image.width, image.height), image.width, image.height);
  $("dark").getContext("2d").clearRect(0, 0, $("dark").width, $("dark").height);
}

function loadSample(name) {
  const s = sample_chart(name, W, H);
  $("k").value = s.k;
  show({ rgba: s.pixels, width: W, height: H });
}

async function loadFile(file) {
  const bitmap = await createImageBitmap(file);
  const c = new OffscreenCanvas(bitmap.width, bitmap.height);
  const ctx = c.getContext("2d");
  ctx.drawImage(bitmap, 0, 0);
  const data = ctx.getImageData(0, 0, bitmap.width, bitmap.height).data;
  show({ rgba: new Uint8Array(data.buffer), width: bitmap.width, height: bitmap.height });
}

function num(id) {
  return Number($(id).value);
}

function hexCell(hex) {
  return `<span class="swatch" style="background:${hex}"></span> ${hex}`;
}

function renderTransformReport(report) {
  const rows = report.palette.map((p, i) =>
    `<tr><td>${i}</td><td>${hexCell(p.light)}</td><td>${hexCell(p.dark)}</td><td>${p.count}</td></tr>`).join("");
  const m = report.metrics;
  const cond = (name, c) =>
    `<tr><td>${name}</td><td>${c.contrast_score.toFixed(2)}</td><td>${c.pass ? "pass" : "fail"}</td><td>${c.color_difference.toFixed(2)}</td></tr>`;
  $("palette").innerHTML =
    `<table><tr><th>#</th><th>light</th><th>dark</th><th>pixels</th></tr>${rows}</table>
     <p>energy ${report.energy.initial.toFixed(3)} &rarr; ${report.energy.final.toFixed(3)}</p>
     <table><tr><th>condition</th><th>contrast</th><th>WCAG 3:1</th><th>&Delta;E00</th></tr>
     ${cond("light", m.light)}${cond("inverse", m.inverse)}${cond("dark", m.dark)}</table>`;
}

function runTransform() {
  if (!current) return;
  status("running...");
  // let the status paint before the synchronous wasm call
  setTimeout(() => {
    try {
      const t = performance.now();
      const r = transform_rgba(current.rgba, current.width, current.height,
        $("light-bg").value, $("dark-bg").value, num("k"),
        num("w-lc"), num("w-cc"), num("w-ac"), num("iterations"), num("seed"), $("residual").checked);
      draw("dark", r.pixels, current.width, current.height);
      renderTransformReport(JSON.parse(r.report));
      status(`done in ${(performance.now() - t).toFixed(0)} ms`);
    } catch (e) {
      status(String(e), true);
    }
  }, 10);
}

function runExtract() {
  if (!current) return;
  try {
    const p = JSON.parse(extract_palette_json(current.rgba, current.width, current.height,
      $("light-bg").value, num("k"), num("seed")));
    const rows = p.colors.map((hex, i) => `<tr><td>${i}</td><td>${hexCell(hex)}</td><td>${p.counts[i]}</td></tr>`).join("");
    const adj = p.adjacency.map(([i, j]) => `${i}-${j}`).join(", ") || "none";
    $("palette").innerHTML =
      `<table><tr><th>#</th><th>color</th><th>pixels</th></tr>${rows}</table><p>adjacent: ${adj}</p>` +
      (p.k < p.requested_k ? `<p>k clamped from ${p.requested_k} to ${p.k}</p>` : "");
    status("");
  } catch (e) {
    status(String(e), true);
  }
}

function updateContrast() {
  try {
    $("ratio").textContent = contrast_ratio($("fg").value, $("bg").value).toFixed(2) + ":1";
    $("fg-swatch").style.background = $("fg").value;
    $("bg-swatch").style.background = $("bg").value;
  } catch (e) {
    $("ratio").textContent = String(e);
  }
}

await init();
for (const name of sample_chart_names().split(",")) {
  $("sample").add(new Option(name, name));
}
$("sample").addEventListener("change", (e) => loadSample(e.target.value));
$("file").addEventListener("change", (e) => e.target.files[0] && loadFile(e.target.files[0]).catch((err) => status(String(err), true)));
$("run").addEventListener("click", runTransform);
$("extract").addEventListener("click", runExtract);
$("fg").addEventListener("input", updateContrast);
$("bg").addEventListener("input", updateContrast);
loadSample($("sample").value);
updateContrast();
