import init, { simulate_path, liquidation_grid, tornado, presets } from "./pkg/derivsim_wasm.js";

const $ = (id) => document.getElementById(id);
const figure = $("figure");
const status = $("status");

function documentFor() {
  return JSON.stringify({
    market: {
      initial_price: 100,
      volatility: Number($("volatility").value),
      master_seed: Number($("seed").value),
    },
    contract: {
      type: "perpetual",
      underlying: { symbol: "SOL", category: "L1" },
      collateral_asset: { symbol: "USDC", category: "Stable" },
      collateral_amount: 1000,
      leverage: Number($("leverage").value),
      side: "long",
      entry_reference_price: 100,
    },
    preset: $("preset").value,
    experiment: {
      replications: Number($("replications").value),
      grid: { sigmas: [0.02, 0.04, 0.06, 0.08], leverages: [2, 5, 10, 15, 20, 50, 100] },
      tornado: { shock: 0.2 },
    },
  });
}

function say(text, isError = false) {
  status.textContent = text;
  status.className = isError ? "error" : "";
}

function timed(label, fn) {
  say(`${label}...`);
  // let the status paint before the blocking call
  setTimeout(() => {
    const t0 = performance.now();
    try {
      const summary = fn();
      say(`${summary} (${Math.round(performance.now() - t0)} ms)`);
    } catch (err) {
      figure.replaceChildren();
      say(String(err), true);
    }
  }, 10);
}

function polyline(values, width, height, pad, lo, hi, colour) {
  const span = hi > lo ? hi - lo : 1;
  const step = (width - 2 * pad) / Math.max(values.length - 1, 1);
  const pts = values.map((v, i) => `${(pad + i * step).toFixed(1)},${(height - pad - ((v - lo) / span) * (height - 2 * pad)).toFixed(1)}`);
  return `<polyline fill="none" stroke="${colour}" stroke-width="1.5" points="${pts.join(" ")}"/>`;
}

function pathChart(view) {
  const rows = view.trace_csv.trim().split("\n").slice(1).map((l) => l.split(","));
  const prices = view.path.prices;
  const equity = rows.map((r) => Number(r[4]));
  const margin = rows.map((r) => Number(r[5]));
  const w = 900, h = 260, pad = 30;
  const priceBox = polyline(prices, w, h, pad, Math.min(...prices), Math.max(...prices), "#333");
  const lo = Math.min(...equity, ...margin, 0), hi = Math.max(...equity, ...margin);
  const eq = polyline(equity, w, h, pad, lo, hi, "#2166ac");
  const mm = polyline(margin, w, h, pad, lo, hi, "#b30000");
  return `
    <svg xmlns="http://www.w3.org/2000/svg" width="${w}" height="${h}" font-size="12">
      <text x="${pad}" y="18">price</text>${priceBox}
    </svg>
    <svg xmlns="http://www.w3.org/2000/svg" width="${w}" height="${h}" font-size="12">
      <text x="${pad}" y="18"><tspan fill="#2166ac">equity</tspan> vs <tspan fill="#b30000">maintenance requirement</tspan></text>${eq}${mm}
    </svg>`;
}

$("run-path").addEventListener("click", () =>
  timed("simulating path", () => {
    const view = JSON.parse(simulate_path(documentFor(), Number($("path-index").value)));
    figure.innerHTML = pathChart(view);
    const o = view.outcome;
    return `${o.event.replaceAll("_", " ")} at step ${o.exit_step}, realized PnL ${o.realized_pnl.toFixed(2)}`;
  }),
);

$("run-grid").addEventListener("click", () =>
  timed("sweeping grid", () => {
    const view = JSON.parse(liquidation_grid(documentFor()));
    figure.innerHTML = view.svg + view.median_svg;
    return "heatmap ready";
  }),
);

$("run-tornado").addEventListener("click", () =>
  timed("running sensitivities", () => {
    const view = JSON.parse(tornado(documentFor()));
    figure.innerHTML = view.svg;
    const r = view.result;
    return `baseline ${(100 * r.baseline_liq_prob).toFixed(1)}% ± ${(100 * r.baseline_standard_error).toFixed(1)}%`;
  }),
);

for (const id of ["leverage", "volatility"]) {
  const input = $(id);
  const out = document.querySelector(`output[for="${id}"]`);
  const sync = () => (out.textContent = input.value);
  input.addEventListener("input", sync);
  sync();
}

await init();
for (const p of JSON.parse(presets())) {
  const opt = document.createElement("option");
  opt.value = p.name;
  opt.textContent = `${p.name} (max ${p.max_leverage}x)`;
  $("preset").append(opt);
}
say("ready");
