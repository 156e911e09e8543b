import init, { weight_profile, perfect_matching, exact_matching } from "./pkg/algmatch_web.js";

const board = document.getElementById("board");
const ctx = board.getContext("2d");
const status = document.getElementById("status");
const text = document.getElementById("text");
const R = 12;

let vertices = [];
let edges = []; // {u, v, w} with u < v
let selected = null;
let highlight = new Set();

function graphText() {
  const rows = edges.map((e) => `${e.u} ${e.v} ${e.w}`);
  return [`${vertices.length} ${edges.length}`, ...rows].join("\n") + "\n";
}

function layoutCircle(n) {
  const cx = board.width / 2, cy = board.height / 2, r = Math.min(cx, cy) - 40;
  return Array.from({ length: n }, (_, i) => ({
    x: cx + r * Math.cos((2 * Math.PI * i) / n - Math.PI / 2),
    y: cy + r * Math.sin((2 * Math.PI * i) / n - Math.PI / 2),
  }));
}

function draw() {
  ctx.clearRect(0, 0, board.width, board.height);
  edges.forEach((e, i) => {
    const a = vertices[e.u], b = vertices[e.v];
    ctx.strokeStyle = e.w ? "#cc3333" : "#3366cc";
    ctx.lineWidth = highlight.has(i) ? 7 : 2;
    ctx.globalAlpha = highlight.size && !highlight.has(i) ? 0.35 : 1;
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  });
  ctx.globalAlpha = 1;
  vertices.forEach((p, i) => {
    ctx.fillStyle = i === selected ? "#ffd24d" : "#fff";
    ctx.strokeStyle = "#333";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.arc(p.x, p.y, R, 0, 2 * Math.PI);
    ctx.fill();
    ctx.stroke();
    ctx.fillStyle = "#333";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(String(i), p.x, p.y);
  });
  text.value = graphText();
}

function vertexAt(x, y) {
  return vertices.findIndex((p) => Math.hypot(p.x - x, p.y - y) <= R);
}

function edgeAt(x, y) {
  return edges.findIndex((e) => {
    const a = vertices[e.u], b = vertices[e.v];
    const dx = b.x - a.x, dy = b.y - a.y;
    const t = Math.max(0, Math.min(1, ((x - a.x) * dx + (y - a.y) * dy) / (dx * dx + dy * dy)));
    return Math.hypot(a.x + t * dx - x, a.y + t * dy - y) < 6;
  });
}

function changed() {
  highlight = new Set();
  status.textContent = `${vertices.length} vertices, ${edges.length} edges`;
  draw();
}

board.addEventListener("click", (ev) => {
  const rect = board.getBoundingClientRect();
  const x = ev.clientX - rect.left, y = ev.clientY - rect.top;
  const v = vertexAt(x, y);
  if (v >= 0) {
    if (selected === null) {
      selected = v;
    } else if (selected !== v) {
      const [u, w] = selected < v ? [selected, v] : [v, selected];
      if (!edges.some((e) => e.u === u && e.v === w)) edges.push({ u, v: w, w: 0 });
      selected = null;
      changed();
      return;
    } else {
      selected = null;
    }
    draw();
    return;
  }
  const e = edgeAt(x, y);
  if (e >= 0) {
    if (edges[e].w === 0) edges[e].w = 1;
    else edges.splice(e, 1);
  } else {
    vertices.push({ x, y });
  }
  selected = null;
  changed();
});

function seed() {
  return BigInt(document.getElementById("seed").value || 0);
}

function run(label, f) {
  try {
    f();
  } catch (err) {
    highlight = new Set();
    status.textContent = `${label}: ${err.message ?? err}`;
  }
  draw();
}

function showMatching(label, found) {
  if (found === undefined) {
    highlight = new Set();
    status.textContent = `${label}: none found`;
    return;
  }
  highlight = new Set(found);
  const heavy = [...found].filter((i) => edges[i].w === 1).length;
  status.textContent = `${label}: ${found.length} edges, ${heavy} heavy`;
}

document.getElementById("profile").onclick = () =>
  run("profile", () => {
    const bits = weight_profile(graphText(), seed());
    highlight = new Set();
    const ks = [...bits].flatMap((b, k) => (b ? [k] : []));
    status.textContent = ks.length
      ? `perfect matchings exist with ${ks.join(", ")} heavy edges`
      : "no perfect matching";
  });

document.getElementById("perfect").onclick = () =>
  run("perfect matching", () => showMatching("perfect matching", perfect_matching(graphText(), seed())));

document.getElementById("exact").onclick = () =>
  run("exact matching", () => {
    const k = Number(document.getElementById("k").value || 0);
    showMatching(`k=${k}`, exact_matching(graphText(), k, seed()));
  });

document.getElementById("clear").onclick = () => {
  vertices = [];
  edges = [];
  selected = null;
  changed();
};

document.getElementById("load").onclick = () => {
  const lines = text.value.split("\n").map((l) => l.trim()).filter((l) => l && !l.startsWith("#"));
  const [n] = (lines[0] ?? "0").split(/\s+/).map(Number);
  vertices = layoutCircle(n || 0);
  edges = lines.slice(1).map((l) => {
    const [a, b, w] = l.split(/\s+/).map(Number);
    return { u: Math.min(a, b), v: Math.max(a, b), w };
  });
  selected = null;
  changed();
};

await init();
text.value = "6 9\n0 1 0\n1 2 0\n0 2 0\n3 4 0\n4 5 0\n3 5 0\n0 3 1\n1 4 1\n2 5 1\n";
document.getElementById("load").onclick();
