import { ApiError } from "./api";
import type { InterpretationView, PaletteEntry, SequenceItem, SessionView } from "./types";

/** The slice of the API client the board needs (swappable in tests). */
export interface BoardApi {
  getLexicon(): Promise<{ icons: PaletteEntry[] }>;
  createSession(): Promise<string>;
  getSession(sessionId: string): Promise<SessionView>;
  appendIcons(sessionId: string, ids: string[]): Promise<SessionView>;
  removeIcons(sessionId: string, positions: number[]): Promise<SessionView>;
}

export interface Notice {
  id: number;
  message: string;
}

export interface BoardState {
  palette: PaletteEntry[];
  sessionId: string | null;
  sequence: SequenceItem[];
  interpretations: InterpretationView[];
  selectedRank: number;
  replaceTarget: number | null;
  notices: Notice[];
  busy: boolean;
}

/**
 * Holds the board state and serializes every mutation.
 *
 * The server session is the source of truth: the board only ever renders
 * the last confirmed view, never an optimistic guess.  Rapid clicks are
 * queued and sent strictly in order; a failed mutation posts a notice and
 * re-fetches the session so the board snaps back to reality.
 */
export class BoardController {
  readonly state: BoardState = {
    palette: [],
    sessionId: null,
    sequence: [],
    interpretations: [],
    selectedRank: 1,
    replaceTarget: null,
    notices: [],
    busy: false,
  };

  private tail: Promise<void> = Promise.resolve();
  private listeners: Array<() => void> = [];
  private noticeSeq = 0;

  constructor(private api: BoardApi) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  /** Resolves once every queued mutation has settled (test hook). */
  idle(): Promise<void> {
    return this.tail;
  }

  async loadPalette(): Promise<void> {
    try {
      const lexicon = await this.api.getLexicon();
      this.state.palette = lexicon.icons;
    } catch (err) {
      this.pushNotice(`could not load the palette: ${describe(err)}`);
    }
    this.emit();
  }

  appendIcon(iconId: string): Promise<void> {
    return this.enqueue(async () => {
      const sid = await this.ensureSession();
      this.applyView(await this.api.appendIcons(sid, [iconId]));
    });
  }

  removeIcon(position: number): Promise<void> {
    return this.enqueue(async () => {
      const sid = await this.ensureSession();
      this.applyView(await this.api.removeIcons(sid, [position]));
    });
  }

  /** Remove + append shortcut; two round trips inside one queued edit. */
  replaceIcon(position: number, iconId: string): Promise<void> {
    return this.enqueue(async () => {
      const sid = await this.ensureSession();
      await this.api.removeIcons(sid, [position]);
      this.applyView(await this.api.appendIcons(sid, [iconId]));
    });
  }

  selectInterpretation(rank: number): void {
    if (rank >= 1 && rank <= this.state.interpretations.length) {
      this.state.selectedRank = rank;
      this.emit();
    }
  }

  toggleReplaceTarget(position: number): void {
    this.state.replaceTarget = this.state.replaceTarget === position ? null : position;
    this.emit();
  }

  dismissNotice(id: number): void {
    this.state.notices = this.state.notices.filter((n) => n.id !== id);
    this.emit();
  }

  // -- internals ---------------------------------------------------------

  private enqueue(op: () => Promise<void>): Promise<void> {
    this.state.busy = true;
    this.emit();
    this.tail = this.tail
      .then(op)
      .catch((err) => this.recover(err))
      .then(() => {
        this.state.busy = false;
        this.emit();
      });
    return this.tail;
  }

  private async ensureSession(): Promise<string> {
    if (this.state.sessionId === null) {
      this.state.sessionId = await this.api.createSession();
    }
    return this.state.sessionId;
  }

  private applyView(view: SessionView): void {
    this.state.sessionId = view.session_id;
    this.state.sequence = view.sequence;
    this.state.interpretations = view.interpretations;
    if (this.state.selectedRank > view.interpretations.length) {
      this.state.selectedRank = 1;
    }
    this.state.replaceTarget = null;
    this.emit();
  }

  private async recover(err: unknown): Promise<void> {
    this.pushNotice(describe(err));
    // snap back to the last server-confirmed state
    if (this.state.sessionId !== null) {
      try {
        this.applyView(await this.api.getSession(this.state.sessionId));
      } catch {
        // server unreachable or session gone; keep the current board
      }
    }
    this.emit();
  }

  private pushNotice(message: string): void {
    this.state.notices.push({ id: ++this.noticeSeq, message });
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.field ? `${err.message} (${err.field})` : err.message;
  }
  return err instanceof Error ? err.message : String(err);
}
