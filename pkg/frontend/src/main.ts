import { ApiClient } from "./api.js";
import { legend, renderCover } from "./coverRenderer.js";
import {
  GameView,
  createGame,
  exportView,
  importView,
  newView,
  playRound,
  renderedKValues,
  statusLine,
} from "./gameView.js";
import { ExplorerState, newExplorer, toggle, visibleRows } from "./treeExplorer.js";
import type { SpaceJson } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

let client = new ApiClient("http://127.0.0.1:8008");
let view: GameView = newView();
let explorer: ExplorerState | null = null;

function redrawGame(): void {
  const status = statusLine(view);
  $("status").textContent = status.text;
  $("error").textContent = view.error ?? "";
  ($("play") as HTMLButtonElement).disabled = view.busy || status.ended;
  const rounds = view.state?.rounds ?? [];
  const ks = renderedKValues(view);
  $("rounds").innerHTML = rounds
    .map(
      (round, i) =>
        `<li data-round="${i}" class="${i === view.selectedRound ? "selected" : ""}">` +
        `r=${round.r} &rarr; k=${ks[i]}</li>`,
    )
    .join("");
  const current = view.selectedRound === null ? null : rounds[view.selectedRound];
  if (current && view.space) {
    const rendered = renderCover(view.space, current.cover);
    if (rendered.kind === "svg") {
      $("cover").innerHTML =
        rendered.svg + (rendered.notice ? `<p>${rendered.notice}</p>` : "");
    } else {
      $("cover").innerHTML =
        "<ul>" +
        rendered.rows
          .map((row) => `<li>family ${row.family}: {${row.points.join(", ")}}</li>`)
          .join("") +
        "</ul>";
    }
    $("legend").innerHTML = legend(current.cover)
      .map(
        (entry) =>
          `<span style="color:${entry.color}">family ${entry.family} ` +
          `(&gt;${entry.demand} apart)</span>`,
      )
      .join(" ");
  } else {
    $("cover").innerHTML = "";
    $("legend").innerHTML = "";
  }
}

function redrawTree(): void {
  if (!explorer) return;
  if (explorer.model.empty) {
    $("tree").innerHTML = `<p>${explorer.model.notice}</p>`;
    return;
  }
  $("tree").innerHTML = visibleRows(explorer)
    .map(
      (row) =>
        `<div class="tree-row" data-id="${row.id}" style="margin-left:${row.depth}em">` +
        `${row.expandable ? (row.expanded ? "&#9662;" : "&#9656;") : "&nbsp;"} ` +
        `${row.label} <span class="badge">${row.badge}</span></div>`,
    )
    .join("");
  for (const el of Array.from($("tree").querySelectorAll(".tree-row"))) {
    el.addEventListener("click", () => {
      explorer = toggle(explorer!, (el as HTMLElement).dataset.id ?? "");
      redrawTree();
    });
  }
}

function wire(): void {
  $("connect").addEventListener("click", () => {
    client = new ApiClient(($("service") as HTMLInputElement).value);
  });

  $("create").addEventListener("click", () => {
    void (async () => {
      try {
        const space = JSON.parse(
          ($("space-json") as HTMLTextAreaElement).value,
        ) as SpaceJson;
        view = await createGame(client, view, space, {
          bound: Number(($("bound") as HTMLInputElement).value),
          kcap: Number(($("kcap") as HTMLInputElement).value),
          rmax: Number(($("rmax") as HTMLInputElement).value),
        });
      } catch (err) {
        view = { ...view, error: String(err) };
      }
      redrawGame();
    })();
  });

  $("play").addEventListener("click", () => {
    void (async () => {
      const r = Number(($("demand") as HTMLInputElement).value);
      redrawGame();
      view = await playRound(client, view, r);
      redrawGame();
    })();
  });

  $("export").addEventListener("click", () => {
    void (async () => {
      try {
        const bundle = await exportView(client, view);
        ($("transcript") as HTMLTextAreaElement).value = JSON.stringify(bundle, null, 1);
      } catch (err) {
        view = { ...view, error: String(err) };
        redrawGame();
      }
    })();
  });

  $("import").addEventListener("click", () => {
    try {
      const bundle = JSON.parse(($("transcript") as HTMLTextAreaElement).value);
      view = importView(bundle);
      redrawGame();
    } catch (err) {
      view = { ...view, error: String(err) };
      redrawGame();
    }
  });

  $("explore").addEventListener("click", () => {
    void (async () => {
      try {
        const tree = await client.empiricalTree({
          space: ($("tree-space") as HTMLInputElement).value,
          rmax: Number(($("tree-rmax") as HTMLInputElement).value),
          lmax: Number(($("tree-lmax") as HTMLInputElement).value),
          bound: Number(($("tree-bound") as HTMLInputElement).value),
        });
        explorer = newExplorer(tree);
        redrawTree();
      } catch (err) {
        $("tree").innerHTML = `<p class="error">${String(err)}</p>`;
      }
    })();
  });
}

if (typeof document !== "undefined" && document.getElementById("play")) {
  wire();
  redrawGame();
}
