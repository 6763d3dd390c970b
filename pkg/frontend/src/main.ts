import { ApiClient } from "./api";
import { BoardController, type BoardApi } from "./board";
import { render, type Handlers } from "./render";

/** Wire a controller to a DOM root; shared by the page and the tests. */
export function mountBoard(root: HTMLElement, api: BoardApi): BoardController {
  const controller = new BoardController(api);
  const handlers: Handlers = {
    paletteClick(iconId) {
      const target = controller.state.replaceTarget;
      if (target !== null) {
        void controller.replaceIcon(target, iconId);
      } else {
        void controller.appendIcon(iconId);
      }
    },
    removeClick(position) {
      void controller.removeIcon(position);
    },
    tileClick(position) {
      controller.toggleReplaceTarget(position);
    },
    selectRank(rank) {
      controller.selectInterpretation(rank);
    },
    dismissNotice(id) {
      controller.dismissNotice(id);
    },
  };
  controller.onChange(() => render(root, controller.state, handlers));
  render(root, controller.state, handlers);
  void controller.loadPalette();
  return controller;
}

function boot(): void {
  const root = document.getElementById("board");
  if (!root) return;
  const base = new URLSearchParams(window.location.search).get("api") ?? "";
  mountBoard(root, new ApiClient(base));
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  boot();
}
