package com.demo.model;

import java.time.LocalDate;
import java.time.temporal.ChronoUnit;

public class Loan extends Entity {
    private final Book book;
    private final Member member;
    private final LocalDate start;
    private LocalDate returned;

    public Loan(String id, Book book, Member member, LocalDate start) {
        super(id);
        this.book = book;
        this.member = member;
        this.start = start;
        member.addLoan(this);
    }

    public Book getBook() {
        return book;
    }

    public Member getMember() {
        return member;
    }

    public LocalDate due() {
        return start.plusDays(book.getGenre().loanDays());
    }

    public boolean isReturned() {
        return returned != null;
    }

    public void close(LocalDate when) {
        if (isReturned()) {
            throw new IllegalStateException("loan already closed");
        }
        returned = when;
        book.giveBack();
    }

    public long overdueDays(LocalDate today) {
        LocalDate end = returned != null ? returned : today;
        long days = ChronoUnit.DAYS.between(due(), end);
        return days > 0 ? days : 0;
    }
}
