"""
Static, self-contained HTML view of the flow matrix.

The page embeds the flow cells as JSON and draws them on a canvas with
mouse-wheel zoom and drag-to-pan; it loads nothing from the network.
"""

import html
import json
from typing import Sequence

from chainlens.analytics import FlowCell

_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>
  body {{ margin: 0; font-family: sans-serif; background: #111; color: #ddd; }}
  #info {{ position: fixed; top: 4px; left: 8px; font-size: 12px; }}
  canvas {{ display: block; cursor: grab; }}
</style>
</head>
<body>
<div id="info">{title}: <span id="hover">drag to pan, wheel to zoom</span></div>
<canvas id="matrix"></canvas>
<script id="cells" type="application/json">{cells}</script>
<script>
(function () {{
  const cells = JSON.parse(document.getElementById("cells").textContent);
  const maxHeight = {max_height};
  const canvas = document.getElementById("matrix");
  const ctx = canvas.getContext("2d");
  let scale = 1, ox = 20, oy = 20, dragging = null;

  function resize() {{
    canvas.width = window.innerWidth;
    canvas.height = window.innerHeight;
    const side = Math.min(canvas.width, canvas.height) - 40;
    scale = side / Math.max(maxHeight + 1, 1);
    draw();
  }}

  function draw() {{
    ctx.fillStyle = "#111";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    const size = Math.max(scale, 1);
    for (const [src, dst, fraction] of cells) {{
      const shade = Math.round(64 + 191 * fraction);
      ctx.fillStyle = "rgb(" + shade + "," + Math.round(shade * 0.6) + ",32)";
      ctx.fillRect(ox + dst * scale, oy + src * scale, size, size);
    }}
  }}

  canvas.addEventListener("wheel", function (e) {{
    e.preventDefault();
    const factor = e.deltaY < 0 ? 1.25 : 0.8;
    ox = e.offsetX - (e.offsetX - ox) * factor;
    oy = e.offsetY - (e.offsetY - oy) * factor;
    scale *= factor;
    draw();
  }});
  canvas.addEventListener("mousedown", function (e) {{
    dragging = [e.offsetX - ox, e.offsetY - oy];
  }});
  window.addEventListener("mouseup", function () {{ dragging = null; }});
  canvas.addEventListener("mousemove", function (e) {{
    if (dragging) {{
      ox = e.offsetX - dragging[0];
      oy = e.offsetY - dragging[1];
      draw();
    }}
    const dst = Math.floor((e.offsetX - ox) / scale);
    const src = Math.floor((e.offsetY - oy) / scale);
    document.getElementById("hover").textContent =
      "source " + src + " -> destination " + dst;
  }});
  window.addEventListener("resize", resize);
  resize();
}})();
</script>
</body>
</html>
"""


def render_matrix_html(cells: Sequence[FlowCell], title: str = "Block flow matrix") -> str:
    """Render flow cells as a single HTML document (rows: source, columns: destination)."""
    payload = json.dumps(
        [[c.src_height, c.dst_height, round(c.fraction, 12)] for c in cells],
        separators=(",", ":"),
    )
    max_height = max((c.dst_height for c in cells), default=0)
    return _PAGE.format(
        title=html.escape(title),
        cells=payload.replace("</", "<\\/"),
        max_height=max_height,
    )
