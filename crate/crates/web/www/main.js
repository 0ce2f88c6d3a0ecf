// Expects the bindings from `wasm-pack build --target web` in ../pkg.
import init, { splitDrawings, nestedDrawings, optimize } from "../pkg/redraw_web.js";

const $ = (id) => document.getElementById(id);

function show(prefix, run) {
  const count = $(`${prefix}-count`);
  const gallery = $(`${prefix}-gallery`);
  gallery.replaceChildren();
  count.className = "";
  try {
    const { count: n, svgs } = JSON.parse(run());
    count.textContent = `${n} drawing${n === 1 ? "" : "s"}`;
    for (const svg of svgs) {
      const div = document.createElement("div");
      div.innerHTML = svg;
      gallery.append(div.firstElementChild);
    }
  } catch (e) {
    count.className = "error";
    count.textContent = e.message ?? String(e);
  }
}

function updateSplit() {
  const t = Number($("split-t").value);
  $("split-label").textContent = `${t} / ${8 - t}`;
  show("split", () => splitDrawings(t, 8 - t));
}

function runOptimize() {
  const out = $("optimize-out");
  try {
    const r = JSON.parse(optimize($("constraint").value));
    out.textContent =
      `growth  ${r.growth.toFixed(8)}\n` +
      `alpha   ${r.alpha.map((a) => a.toFixed(6)).join("  ")}\n` +
      `layers  ${r.layer_counts.join(", ")}`;
  } catch (e) {
    out.textContent = e.message ?? String(e);
  }
}

await init();
$("split-t").addEventListener("input", updateSplit);
$("nested-go").addEventListener("click", () => show("nested", () => nestedDrawings(Number($("nested-n").value))));
$("optimize-go").addEventListener("click", runOptimize);
updateSplit();
runOptimize();
