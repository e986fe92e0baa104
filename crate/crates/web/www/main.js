import init, { linkmat, invariants, isomorphic } from "./pkg/linkform_web.js";

const $ = (id) => document.getElementById(id);

function grid(rows, headRow = true) {
  const t = document.createElement("table");
  rows.forEach((row, i) => {
    const tr = t.insertRow();
    row.forEach((cell, j) => {
      const td = tr.insertCell();
      td.textContent = cell;
      if ((headRow && i === 0) || j === 0) td.className = "head";
    });
  });
  return t;
}

function show(out, result, render) {
  out.replaceChildren();
  if (result.error) {
    const p = document.createElement("div");
    p.className = "err";
    p.textContent = result.error;
    out.append(p);
  } else {
    render(result, out);
  }
}

function line(text, cls) {
  const p = document.createElement("p");
  p.textContent = text;
  if (cls) p.className = cls;
  return p;
}

function runLinkmat() {
  show($("lm-out"), JSON.parse(linkmat($("lm-in").value)), (r, out) => {
    const header = ["", ...r.rows.map((_, i) => `g${i + 1}`)];
    const body = r.rows.map((row, i) => [`g${i + 1}`, ...row]);
    out.append(line(`H1 = ${r.h1};  Tors2 = ${r.group}`));
    if (r.rows.length) out.append(grid([header, ...body]));
    const via = r.fallback_reason ? `plumbing (${r.fallback_reason})` : r.path;
    out.append(line(`route: ${via}`, "note"));
  });
}

function runInvariants() {
  show($("inv-out"), JSON.parse(invariants($("inv-in").value)), (r, out) => {
    out.append(grid(r.rows, true));
    out.append(line(`group ${r.group || "0"};  decomposition ${r.decomposition || "(trivial)"}`));
  });
}

function runIso() {
  show($("iso-out"), JSON.parse(isomorphic($("iso-a").value, $("iso-b").value)), (r, out) => {
    out.append(line(r.isomorphic ? "isomorphic" : "not isomorphic", r.isomorphic ? "yes" : "no"));
    out.append(grid(r.rows_a, true), grid(r.rows_b, true));
  });
}

await init();
for (const [button, fn, inputs] of [
  ["lm-go", runLinkmat, ["lm-in"]],
  ["inv-go", runInvariants, ["inv-in"]],
  ["iso-go", runIso, ["iso-a", "iso-b"]],
]) {
  $(button).addEventListener("click", fn);
  for (const id of inputs) $(id).addEventListener("keydown", (e) => e.key === "Enter" && fn());
  fn();
}
